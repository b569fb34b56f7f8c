//! JSON descriptions of rings, modules, bimodules and localizations.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    localize_module, localize_ring, trivial_extension, BimoduleTables, FiniteBimodule,
};
use crate::error::{AlgebraError, Result};
use crate::mask::SubsetMask;
use crate::module::FiniteModule;
use crate::ring::{FiniteRing, RingTables};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StructureSpec {
    Cyclic {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Product {
        left: Box<StructureSpec>,
        right: Box<StructureSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    PatternMatrix {
        p: usize,
        k: usize,
        pattern: Vec<Vec<u8>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Quotient {
        ring: Box<StructureSpec>,
        ideal: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Table {
        order: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        one: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    RegularModule {
        ring: Box<StructureSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    CyclicQuotientModule {
        ring: Box<StructureSpec>,
        ideal: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Submodule {
        module: Box<StructureSpec>,
        elements: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    ProductModule {
        left: Box<StructureSpec>,
        right: Box<StructureSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    TrivialExtension {
        bimodule: Box<StructureSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Bimodule {
        ring: Box<StructureSpec>,
        order: usize,
        add: Vec<Vec<usize>>,
        left_action: Vec<Vec<usize>>,
        right_action: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Localization {
        of: Box<StructureSpec>,
        denominators: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

/// What a spec resolves to.
#[derive(Debug, Clone)]
pub enum Structure {
    Ring(Arc<FiniteRing>),
    Module(FiniteModule),
    Bimodule(FiniteBimodule),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Ring(_) => "ring",
            Structure::Module(_) => "module",
            Structure::Bimodule(_) => "bimodule",
        }
    }

    pub fn digest(&self) -> [u8; 32] {
        match self {
            Structure::Ring(r) => r.digest(),
            Structure::Module(m) => m.digest(),
            Structure::Bimodule(b) => {
                use sha2::{Digest, Sha256};
                let mut h = Sha256::new();
                h.update(b"bimodule");
                h.update(b.ring().digest());
                h.update(serde_json::to_vec(&b.tables()).expect("tables serialize"));
                h.finalize().into()
            }
        }
    }
}

/// A parse or validation failure with its position in the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}:{}: at `{}`: {}",
            self.line, self.column, self.path, self.message
        )
    }
}

impl std::error::Error for SpecError {}

/// Parses JSON text into a value of type `T`, reporting the failing path.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> std::result::Result<T, SpecError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let message = inner.to_string();
        let (line, column) = if inner.line() > 0 {
            (inner.line(), inner.column())
        } else {
            locate(text, &path, &message)
        };
        SpecError {
            path,
            line,
            column,
            message,
        }
    })
}

/// Tagged enums are buffered before they are decoded, which loses the
/// position; recover it by following the path's keys through the text.
fn locate(text: &str, path: &str, message: &str) -> (usize, usize) {
    let mut offset = 0;
    let mut keys: Vec<&str> = path
        .split('.')
        .map(|seg| seg.split('[').next().unwrap_or(""))
        .filter(|k| !k.is_empty() && *k != "?")
        .collect();
    let unknown = message
        .strip_prefix("unknown field `")
        .and_then(|rest| rest.split('`').next());
    keys.extend(unknown);
    for key in keys {
        let needle = format!("\"{key}\"");
        if let Some(at) = text[offset..].find(&needle) {
            offset += at;
        }
    }
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |n| n + 1) + 1;
    (line, column)
}

pub fn parse_spec(text: &str) -> std::result::Result<StructureSpec, SpecError> {
    parse_json(text)
}

fn mask(carrier: usize, elements: &[usize]) -> Result<SubsetMask> {
    if let Some(&bad) = elements.iter().find(|&&e| e >= carrier) {
        return Err(AlgebraError::input(format!(
            "element {bad} out of range for a carrier of size {carrier}"
        )));
    }
    Ok(SubsetMask::from_indices(carrier, elements.iter().copied()))
}

fn relabel<T>(value: T, label: &Option<String>, set: impl FnOnce(T, String) -> T) -> T {
    match label {
        Some(l) => set(value, l.clone()),
        None => value,
    }
}

impl StructureSpec {
    pub fn cyclic(n: usize) -> Self {
        StructureSpec::Cyclic { n, label: None }
    }

    pub fn regular(ring: StructureSpec) -> Self {
        StructureSpec::RegularModule {
            ring: Box::new(ring),
            label: None,
        }
    }

    pub fn pattern(p: usize, k: usize, pattern: &[Vec<bool>]) -> Self {
        StructureSpec::PatternMatrix {
            p,
            k,
            pattern: pattern
                .iter()
                .map(|row| row.iter().map(|&b| b as u8).collect())
                .collect(),
            label: None,
        }
    }

    pub fn product(left: StructureSpec, right: StructureSpec) -> Self {
        StructureSpec::Product {
            left: Box::new(left),
            right: Box::new(right),
            label: None,
        }
    }

    pub fn product_module(left: StructureSpec, right: StructureSpec) -> Self {
        StructureSpec::ProductModule {
            left: Box::new(left),
            right: Box::new(right),
            label: None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            StructureSpec::Cyclic { .. } => "cyclic",
            StructureSpec::Product { .. } => "product",
            StructureSpec::PatternMatrix { .. } => "pattern_matrix",
            StructureSpec::Quotient { .. } => "quotient",
            StructureSpec::Table { .. } => "table",
            StructureSpec::RegularModule { .. } => "regular_module",
            StructureSpec::CyclicQuotientModule { .. } => "cyclic_quotient_module",
            StructureSpec::Submodule { .. } => "submodule",
            StructureSpec::ProductModule { .. } => "product_module",
            StructureSpec::TrivialExtension { .. } => "trivial_extension",
            StructureSpec::Bimodule { .. } => "bimodule",
            StructureSpec::Localization { .. } => "localization",
        }
    }

    pub fn resolve(&self) -> Result<Structure> {
        match self {
            StructureSpec::Localization {
                of,
                denominators,
                label,
            } => match of.resolve()? {
                Structure::Ring(r) => {
                    let s = mask(r.order(), denominators)?;
                    let l = localize_ring(&r, &s)?;
                    let ring = Arc::try_unwrap(l.ring).unwrap_or_else(|a| (*a).clone());
                    Ok(Structure::Ring(Arc::new(relabel(
                        ring,
                        label,
                        FiniteRing::with_label,
                    ))))
                }
                Structure::Module(m) => {
                    let s = mask(m.ring().order(), denominators)?;
                    let l = localize_module(&m, &s)?;
                    Ok(Structure::Module(relabel(
                        l.module,
                        label,
                        FiniteModule::with_label,
                    )))
                }
                Structure::Bimodule(_) => Err(AlgebraError::input("cannot localize a bimodule")),
            },
            StructureSpec::RegularModule { .. }
            | StructureSpec::CyclicQuotientModule { .. }
            | StructureSpec::Submodule { .. }
            | StructureSpec::ProductModule { .. } => Ok(Structure::Module(self.module()?)),
            StructureSpec::Bimodule { .. } => Ok(Structure::Bimodule(self.bimodule()?)),
            _ => Ok(Structure::Ring(Arc::new(self.ring()?))),
        }
    }

    /// Resolves a ring spec. Module, bimodule and localization specs are
    /// rejected unless they describe a ring.
    pub fn ring(&self) -> Result<FiniteRing> {
        let ring = match self {
            StructureSpec::Cyclic { n, label } => {
                relabel(FiniteRing::cyclic(*n)?, label, FiniteRing::with_label)
            }
            StructureSpec::Product { left, right, label } => relabel(
                FiniteRing::product(&left.ring()?, &right.ring()?)?,
                label,
                FiniteRing::with_label,
            ),
            StructureSpec::PatternMatrix {
                p,
                k,
                pattern,
                label,
            } => {
                if let Some(v) = pattern.iter().flatten().find(|&&v| v > 1) {
                    return Err(AlgebraError::input(format!(
                        "pattern entries must be 0 or 1, got {v}"
                    )));
                }
                let pattern: Vec<Vec<bool>> = pattern
                    .iter()
                    .map(|row| row.iter().map(|&v| v == 1).collect())
                    .collect();
                relabel(
                    FiniteRing::pattern_matrix(*p, *k, &pattern)?,
                    label,
                    FiniteRing::with_label,
                )
            }
            StructureSpec::Quotient { ring, ideal, label } => {
                let r = ring.ring()?;
                let i = mask(r.order(), ideal)?;
                relabel(r.quotient(&i)?.ring, label, FiniteRing::with_label)
            }
            StructureSpec::Table {
                order,
                add,
                mul,
                one,
                label,
            } => FiniteRing::from_tables(
                label.clone().unwrap_or_else(|| format!("table{order}")),
                &RingTables {
                    order: *order,
                    add: add.clone(),
                    mul: mul.clone(),
                    one: *one,
                },
            )?,
            StructureSpec::TrivialExtension { bimodule, label } => relabel(
                trivial_extension(&bimodule.bimodule()?)?.ring,
                label,
                FiniteRing::with_label,
            ),
            StructureSpec::Localization { .. } => match self.resolve()? {
                Structure::Ring(r) => Arc::try_unwrap(r).unwrap_or_else(|a| (*a).clone()),
                _ => {
                    return Err(AlgebraError::input(
                        "localization of a module is not a ring",
                    ))
                }
            },
            other => {
                return Err(AlgebraError::input(format!(
                    "expected a ring spec, found kind `{}`",
                    other.kind()
                )))
            }
        };
        Ok(ring)
    }

    /// Resolves a module spec; a ring spec is read as its regular module.
    pub fn module(&self) -> Result<FiniteModule> {
        match self {
            StructureSpec::RegularModule { ring, label } => Ok(relabel(
                FiniteModule::regular(&Arc::new(ring.ring()?)),
                label,
                FiniteModule::with_label,
            )),
            StructureSpec::CyclicQuotientModule { ring, ideal, label } => {
                let r = Arc::new(ring.ring()?);
                let i = mask(r.order(), ideal)?;
                Ok(relabel(
                    FiniteModule::quotient_of_ring(&r, &i)?,
                    label,
                    FiniteModule::with_label,
                ))
            }
            StructureSpec::Submodule {
                module,
                elements,
                label,
            } => {
                let m = module.module()?;
                let n = mask(m.order(), elements)?;
                Ok(relabel(
                    m.submodule_as_module(&n)?,
                    label,
                    FiniteModule::with_label,
                ))
            }
            StructureSpec::ProductModule { left, right, label } => Ok(relabel(
                FiniteModule::product(&left.module()?, &right.module()?)?,
                label,
                FiniteModule::with_label,
            )),
            StructureSpec::Localization { .. } => match self.resolve()? {
                Structure::Module(m) => Ok(m),
                Structure::Ring(r) => Ok(FiniteModule::regular(&r)),
                Structure::Bimodule(_) => unreachable!("localization never yields a bimodule"),
            },
            StructureSpec::Bimodule { .. } => Ok(self.bimodule()?.right_module()),
            _ => Ok(FiniteModule::regular(&Arc::new(self.ring()?))),
        }
    }

    pub fn bimodule(&self) -> Result<FiniteBimodule> {
        match self {
            StructureSpec::Bimodule {
                ring,
                order,
                add,
                left_action,
                right_action,
                label,
            } => {
                let r = Arc::new(ring.ring()?);
                FiniteBimodule::from_tables(
                    &r,
                    label.clone().unwrap_or_else(|| format!("B{order}")),
                    &BimoduleTables {
                        order: *order,
                        add: add.clone(),
                        left_action: left_action.clone(),
                        right_action: right_action.clone(),
                    },
                )
            }
            other => Err(AlgebraError::input(format!(
                "expected a bimodule spec, found kind `{}`",
                other.kind()
            ))),
        }
    }

    /// Spec for a bimodule already in memory, written out as tables.
    pub fn from_bimodule(ring: StructureSpec, b: &FiniteBimodule) -> Self {
        let t = b.tables();
        StructureSpec::Bimodule {
            ring: Box::new(ring),
            order: t.order,
            add: t.add,
            left_action: t.left_action,
            right_action: t.right_action,
            label: Some(b.label().to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let s = parse_spec(r#"{"kind":"cyclic","n":6}"#).unwrap();
        assert_eq!(s.ring().unwrap().order(), 6);
        let s = parse_spec(
            r#"{"kind":"pattern_matrix","p":2,"k":3,"pattern":[[1,0,0],[0,1,0],[1,1,1]]}"#,
        )
        .unwrap();
        assert_eq!(s.ring().unwrap().order(), 32);
        let s = parse_spec(r#"{"kind":"cyclic","n":1}"#).unwrap();
        assert!(s.ring().is_err());
    }

    #[test]
    fn strict_fields_and_positions() {
        let e = parse_spec("{\"kind\":\"cyclic\",\n \"n\":6, \"m\":1}").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("unknown field"));
        let e = parse_spec("{\"kind\":\"regular_module\",\n\"ring\":{\"kind\":\"cyclic\"}}")
            .unwrap_err();
        assert!(e.message.contains("missing field `n`"));
        assert!(e.line >= 1);
        let e = parse_spec("{\"kind\":\"cyclic\",\n\"n\": }").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_spec(r#"{"kind":"nope"}"#).unwrap_err();
        assert!(e.message.contains("unknown variant"));
    }

    #[test]
    fn resolves_every_kind() {
        let z8 = StructureSpec::cyclic(8);
        let sub = StructureSpec::Submodule {
            module: Box::new(StructureSpec::regular(z8.clone())),
            elements: vec![0, 4],
            label: Some("4Z8".into()),
        };
        let m = sub.module().unwrap();
        assert_eq!((m.order(), m.label()), (2, "4Z8"));
        let q = StructureSpec::Quotient {
            ring: Box::new(z8.clone()),
            ideal: vec![0, 4],
            label: None,
        };
        assert_eq!(q.ring().unwrap().order(), 4);
        let cq = StructureSpec::CyclicQuotientModule {
            ring: Box::new(z8.clone()),
            ideal: vec![0, 2, 4, 6],
            label: None,
        };
        assert_eq!(cq.module().unwrap().order(), 2);
        let loc = StructureSpec::Localization {
            of: Box::new(StructureSpec::cyclic(6)),
            denominators: vec![1, 2, 4],
            label: None,
        };
        assert_eq!(loc.ring().unwrap().order(), 3);
        let z2 = Arc::new(FiniteRing::cyclic(2).unwrap());
        let b =
            StructureSpec::from_bimodule(StructureSpec::cyclic(2), &FiniteBimodule::regular(&z2));
        let ext = StructureSpec::TrivialExtension {
            bimodule: Box::new(b.clone()),
            label: None,
        };
        assert_eq!(ext.ring().unwrap().order(), 4);
        let text = serde_json::to_string(&ext).unwrap();
        assert_eq!(parse_spec(&text).unwrap(), ext);
        assert!(matches!(b.resolve().unwrap(), Structure::Bimodule(_)));
        assert!(StructureSpec::regular(z8).bimodule().is_err());
    }
}
