//! Declarative group descriptions, read and written as JSON.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use pichar_core::group::Group;
use pichar_core::{AutomorphismAction, Generators, GroupError, SubgroupRef};

use crate::builders::{self, Example};

/// A group construction. Serialization is canonical: compact JSON with the
/// fields in declaration order and absent builtin parameters omitted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "construct", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    PermutationGroup {
        degree: usize,
        gens: Vec<Vec<u32>>,
    },
    MatrixGroup {
        p: u32,
        dim: usize,
        gens: Vec<Vec<u32>>,
    },
    DirectProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
    /// `action[i][j]`: image under generator `i` of `acting` of generator `j`
    /// of `normal`.
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<u32>>,
    },
    CentralProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
    /// Quotient by the normal closure of the listed elements.
    Quotient {
        group: Box<GroupSpec>,
        normal_generators: Vec<u32>,
    },
    Builtin {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        i: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<u32>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("malformed group description: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("builtin {name} needs parameter {param}")]
    MissingParameter { name: String, param: &'static str },
}

fn need(v: Option<u32>, name: &str, param: &'static str) -> Result<u32, SpecError> {
    v.ok_or_else(|| SpecError::MissingParameter {
        name: name.to_string(),
        param,
    })
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("specs serialize")
    }

    pub fn cyclic(n: usize) -> Self {
        GroupSpec::Cyclic { n }
    }

    pub fn builtin(name: &str) -> Self {
        GroupSpec::Builtin {
            name: name.to_string(),
            p: None,
            q: None,
            i: None,
            n: None,
            m: None,
            r: None,
        }
    }

    pub fn with(mut self, key: char, value: u32) -> Self {
        if let GroupSpec::Builtin { p, q, i, n, m, r, .. } = &mut self {
            let slot = match key {
                'p' => p,
                'q' => q,
                'i' => i,
                'n' => n,
                'm' => m,
                'r' => r,
                _ => panic!("unknown builtin parameter {key}"),
            };
            *slot = Some(value);
        }
        self
    }

    pub fn gl2_3() -> Self {
        Self::builtin("gl2_3")
    }

    pub fn extraspecial(p: u32, q: u32) -> Self {
        Self::builtin("extraspecial_example").with('p', p).with('q', q)
    }

    pub fn k_subgroup(p: u32, q: u32, i: u32) -> Self {
        Self::builtin("k_subgroup").with('p', p).with('q', q).with('i', i)
    }

    pub fn fitthree() -> Self {
        Self::builtin("fitthree_example")
    }

    pub fn frobenius_tower(p: u32, q: u32) -> Self {
        Self::builtin("frobenius_tower").with('p', p).with('q', q)
    }

    pub fn heisenberg(p: u32) -> Self {
        Self::builtin("heisenberg").with('p', p)
    }

    pub fn dihedral(n: u32) -> Self {
        Self::builtin("dihedral").with('n', n)
    }

    pub fn metacyclic(n: u32, m: u32, r: u32) -> Self {
        Self::builtin("metacyclic").with('n', n).with('m', m).with('r', r)
    }

    pub fn direct(left: GroupSpec, right: GroupSpec) -> Self {
        GroupSpec::DirectProduct {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// The builtin name, if this is a builtin.
    pub fn builtin_name(&self) -> Option<&str> {
        match self {
            GroupSpec::Builtin { name, .. } => Some(name),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<Example, SpecError> {
        let plain = |g| Example {
            group: g,
            named: BTreeMap::new(),
        };
        Ok(match self {
            GroupSpec::Cyclic { n } => {
                if *n == 0 {
                    return Err(GroupError::Invalid("cyclic group of order 0".into()).into());
                }
                plain(Group::cyclic(*n))
            }
            GroupSpec::PermutationGroup { degree, gens } => plain(Group::from_generators(&Generators::Permutations {
                degree: *degree,
                gens: gens.clone(),
            })?),
            GroupSpec::MatrixGroup { p, dim, gens } => plain(Group::from_generators(&Generators::Matrices {
                p: *p,
                dim: *dim,
                gens: gens.clone(),
            })?),
            GroupSpec::DirectProduct { left, right } => {
                let l = left.build()?.group;
                let r = right.build()?.group;
                plain(Group::direct_product(&l, &r)?)
            }
            GroupSpec::Semidirect { normal, acting, action } => {
                let n = normal.build()?.group;
                let h = acting.build()?.group;
                let act = AutomorphismAction::from_generator_images(&n, action)?;
                plain(Group::semidirect_product(&n, &h, &act)?)
            }
            GroupSpec::CentralProduct { left, right } => {
                let l = left.build()?.group;
                let r = right.build()?.group;
                plain(Group::central_product(&l, &r, None)?.0)
            }
            GroupSpec::Quotient { group, normal_generators } => {
                let g = group.build()?.group;
                if let Some(&bad) = normal_generators.iter().find(|&&x| x as usize >= g.order()) {
                    return Err(GroupError::InvalidGenerator(format!("element {bad} out of range")).into());
                }
                let n = g.normal_closure(normal_generators);
                plain(Group::quotient(&g, &n)?.0)
            }
            GroupSpec::Builtin { name, p, q, i, n, m, r } => match name.as_str() {
                "gl2_3" => builders::gl2_3(),
                "extraspecial_example" => builders::extraspecial_example(need(*p, name, "p")?, need(*q, name, "q")?)?,
                "k_subgroup" => {
                    let (k, ex) = builders::k_subgroup(need(*p, name, "p")?, need(*q, name, "q")?, need(*i, name, "i")?)?;
                    let key = if *i == Some(1) { "K1" } else { "K2" };
                    let parent = ex.sub(key);
                    let local = |s: &SubgroupRef| {
                        SubgroupRef::from_sorted(
                            s.members()
                                .iter()
                                .map(|x| parent.members().binary_search(x).expect("member") as u32)
                                .collect(),
                            k.order(),
                        )
                    };
                    let e = if *i == Some(1) { "E1" } else { "E2" };
                    let mut named = BTreeMap::new();
                    named.insert(e.to_string(), local(ex.sub(e)));
                    named.insert("S".to_string(), local(ex.sub("S")));
                    Example { group: k, named }
                }
                "fitthree_example" => builders::fitthree_example(),
                "frobenius_tower" => builders::frobenius_tower(need(*p, name, "p")?, need(*q, name, "q")?)?,
                "heisenberg" => plain(builders::heisenberg(need(*p, name, "p")?)),
                "dihedral" => plain(builders::dihedral(need(*n, name, "n")?)?),
                "metacyclic" => plain(builders::metacyclic(
                    need(*n, name, "n")?,
                    need(*m, name, "m")?,
                    need(*r, name, "r")?,
                )?),
                other => return Err(SpecError::UnknownBuiltin(other.to_string())),
            },
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// `order:hex`, the hex part a SHA-256 over the order, the sorted class
/// sizes and the Cayley data of the realization.
pub fn fingerprint(g: &Group) -> String {
    let mut h = Sha256::new();
    h.update((g.order() as u64).to_le_bytes());
    let mut sizes = g.classes().sizes();
    sizes.sort_unstable();
    for s in sizes {
        h.update((s as u64).to_le_bytes());
    }
    h.update(g.cayley_digest_input());
    let digest = h.finalize();
    let hex: String = digest.iter().take(12).map(|b| format!("{b:02x}")).collect();
    format!("{}:{hex}", g.order())
}
