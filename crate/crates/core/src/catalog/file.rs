//! Catalog files: named torus automorphisms, lattice isometries and explicit actions.

use serde::Deserialize;

use super::isometry::{isometry_action, LatticeIsometry};
use super::torus::{gauss_matrix, torus_from_matrix, TorusAutomorphism};
use crate::cohomology::HodgeAction;
use crate::error::{Error, Result};

/// The catalog shipped with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("default.json");

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawInstance {
    Torus {
        label: String,
        #[serde(rename = "A")]
        a: [[[i64; 2]; 2]; 2],
    },
    Isometry {
        label: String,
        #[serde(rename = "M")]
        m: Vec<Vec<i64>>,
        #[serde(rename = "G")]
        g: Vec<Vec<i64>>,
    },
    Action {
        label: String,
        dim: usize,
        blocks: Vec<serde_json::Value>,
    },
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Instance {
    Torus(TorusAutomorphism),
    Isometry {
        isometry: LatticeIsometry,
        action: HodgeAction,
    },
    Action(HodgeAction),
}

impl Instance {
    pub fn label(&self) -> &str {
        self.hodge().label()
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Torus(_) => "torus",
            Instance::Isometry { .. } => "isometry",
            Instance::Action(_) => "action",
        }
    }

    pub fn hodge(&self) -> &HodgeAction {
        match self {
            Instance::Torus(t) => t.hodge(),
            Instance::Isometry { action, .. } => action,
            Instance::Action(h) => h,
        }
    }

    pub fn torus(&self) -> Option<&TorusAutomorphism> {
        match self {
            Instance::Torus(t) => Some(t),
            _ => None,
        }
    }

    fn from_raw(raw: RawInstance) -> Result<Self> {
        Ok(match raw {
            RawInstance::Torus { label, a } => Instance::Torus(torus_from_matrix(
                label,
                gauss_matrix(a.map(|r| r.map(|[x, y]| (x, y)))),
            )?),
            RawInstance::Isometry { label, m, g } => {
                let isometry = LatticeIsometry::new(label, m, g)?;
                let action = isometry_action(&isometry)?;
                Instance::Isometry { isometry, action }
            }
            RawInstance::Action { label, dim, blocks } => {
                let doc = serde_json::json!({ "dim": dim, "label": label, "blocks": blocks });
                Instance::Action(HodgeAction::from_json(&doc.to_string())?)
            }
        })
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    instances: Vec<Instance>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: Vec<RawInstance> = serde_json::from_str(text)?;
        let mut instances: Vec<Instance> = Vec::with_capacity(raw.len());
        for r in raw {
            let inst = Instance::from_raw(r)?;
            if instances.iter().any(|i| i.label() == inst.label()) {
                return Err(Error::Parse(format!("duplicate label {:?}", inst.label())));
            }
            instances.push(inst);
        }
        Ok(Self { instances })
    }

    pub fn builtin() -> Self {
        Self::parse(DEFAULT_CATALOG).expect("built-in catalog is valid")
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn get(&self, label: &str) -> Result<&Instance> {
        self.instances
            .iter()
            .find(|i| i.label() == label)
            .ok_or_else(|| Error::UnknownInstance(label.to_string()))
    }

    pub fn tori(&self) -> impl Iterator<Item = &TorusAutomorphism> {
        self.instances.iter().filter_map(Instance::torus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_loads() {
        let c = Catalog::builtin();
        assert!(c.get("cat").unwrap().torus().unwrap().is_hyperbolic());
        assert!(matches!(c.get("nope"), Err(Error::UnknownInstance(_))));
        assert!(c.tori().filter(|t| t.is_hyperbolic()).count() >= 3);
    }

    #[test]
    fn malformed_catalogs() {
        assert!(matches!(Catalog::parse("[{"), Err(Error::Json(_))));
        let bad_det = r#"[{"type":"torus","label":"x","A":[[[2,0],[0,0]],[[0,0],[1,0]]]}]"#;
        assert!(matches!(Catalog::parse(bad_det), Err(Error::InvalidAction(_))));
        let dup = r#"[{"type":"torus","label":"x","A":[[[1,0],[0,0]],[[0,0],[1,0]]]},
                      {"type":"torus","label":"x","A":[[[1,0],[0,0]],[[0,0],[1,0]]]}]"#;
        assert!(matches!(Catalog::parse(dup), Err(Error::Parse(_))));
        let unknown = r#"[{"type":"blowup","label":"x"}]"#;
        assert!(Catalog::parse(unknown).is_err());
    }
}
