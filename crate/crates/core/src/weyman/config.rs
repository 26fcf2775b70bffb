use std::path::Path;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::decompose::{branch_to_levi, Engine, IrrepSum, Settings};
use crate::error::{Error, Result};
use crate::rootsys::{Component, RootDatum};

const BUILTIN: &str = include_str!("../../data/cases.json");

/// A marked node: 0-based group factor, 1-based node within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRef {
    pub component: usize,
    pub node: usize,
}

/// Expected value of a grading element on one piece of `gr(ξ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingSpec {
    pub component: usize,
    pub node: usize,
    pub piece: usize,
    /// Exact rational, e.g. `"-1/3"`.
    pub z: String,
}

/// One desingularization `E ⊂ B × V` of a secant or rank variety.
///
/// All weights are in the concatenated coordinates of the group factors:
/// `GL` factors as integer vectors, simple factors in fundamental coordinates.
/// `ambient` is the highest weight of `V*` (linear forms), `eta` the Levi
/// highest weight of the fiber of `η = E*`, and `xi` the Levi highest weights
/// of the pieces of `gr(ξ)`, `ξ = (V/E)*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesingConfig {
    pub name: String,
    pub description: String,
    pub components: Vec<Component>,
    pub marked: Vec<NodeRef>,
    pub ambient: Vec<i64>,
    pub eta: Vec<i64>,
    pub xi: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingSpec>,
    pub max_degree: usize,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub aliases: Vec<String>,
}

impl DesingConfig {
    pub fn xi_irreducible(&self) -> bool {
        self.xi.len() == 1
    }
}

/// A case left out of the computational catalog, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogNote {
    pub name: String,
    pub reason: String,
}

/// The case catalog as stored in `cases.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub version: String,
    pub cases: Vec<DesingConfig>,
    #[serde(default)]
    pub trivial: Vec<CatalogNote>,
    #[serde(default)]
    pub excluded: Vec<CatalogNote>,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        serde_json::from_str(BUILTIN).expect("bundled catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad case catalog: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Look a case up by name or alias (case-insensitive).
    pub fn find(&self, name: &str) -> Option<&DesingConfig> {
        self.cases.iter().find(|c| {
            c.name.eq_ignore_ascii_case(name) || c.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
        })
    }

    pub fn names(&self) -> Vec<&str> {
        self.cases.iter().map(|c| c.name.as_str()).collect()
    }
}

/// The configured catalog.
pub fn case_catalog() -> Vec<DesingConfig> {
    Catalog::builtin().cases
}

/// A validated configuration with its root data.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub config: DesingConfig,
    pub group: RootDatum,
    pub levi: RootDatum,
    /// Marked nodes as 0-based global indices.
    pub marked: Vec<usize>,
}

impl Prepared {
    /// Check the configuration: fiber weights Levi-dominant, ambient
    /// `g`-dominant, and `V*` restricted to the Levi equal to `η ⊕ gr(ξ)`.
    pub fn new(config: &DesingConfig, settings: Settings) -> Result<Prepared> {
        let group = RootDatum::new(config.components.clone())?;
        let n = group.dim();
        let marked = config
            .marked
            .iter()
            .map(|r| group.global_node(r.component, r.node))
            .collect::<Result<Vec<_>>>()?;
        if marked.is_empty() {
            return Err(Error::Config(format!("{}: no marked nodes", config.name)));
        }
        let levi = group.levi(&marked);
        let all = std::iter::once(&config.ambient)
            .chain(std::iter::once(&config.eta))
            .chain(config.xi.iter());
        for w in all {
            if w.len() != n {
                return Err(Error::Config(format!("{}: weight {w:?} should have {n} coordinates", config.name)));
            }
        }
        if !group.is_dominant(&config.ambient) {
            return Err(Error::Config(format!("{}: ambient weight is not dominant", config.name)));
        }
        for w in std::iter::once(&config.eta).chain(&config.xi) {
            if !levi.is_dominant(w) {
                return Err(Error::Config(format!("{}: {w:?} is not Levi-dominant", config.name)));
            }
        }
        let restricted = branch_to_levi(&group, &levi, &config.ambient, settings)?;
        let mut expected = IrrepSum::single(config.eta.clone());
        for w in &config.xi {
            expected.insert(w.clone(), 1);
        }
        if restricted != expected {
            return Err(Error::Config(format!(
                "{}: V* restricts to {:?} over the Levi, not η ⊕ gr(ξ)",
                config.name,
                restricted.sorted()
            )));
        }
        let prepared = Prepared {
            config: config.clone(),
            group,
            levi,
            marked,
        };
        if let Some(spec) = &config.grading {
            let z = prepared.piece_grade(spec.component, spec.node, spec.piece)?;
            let want: Ratio<i64> = spec
                .z
                .parse()
                .map_err(|_| Error::Config(format!("{}: bad grading value {}", config.name, spec.z)))?;
            if z != want {
                return Err(Error::Config(format!(
                    "{}: Z on piece {} is {z}, catalog says {want}",
                    config.name, spec.piece
                )));
            }
        }
        Ok(prepared)
    }

    /// `Z_node` evaluated on the highest weight of a `gr(ξ)` piece.
    pub fn piece_grade(&self, component: usize, node: usize, piece: usize) -> Result<Ratio<i64>> {
        let w = self
            .config
            .xi
            .get(piece)
            .ok_or_else(|| Error::Config(format!("no gr(ξ) piece {piece}")))?;
        let rs = self.group.components()[component].root_system()?;
        Ok(rs.grading_element_eval(node, &self.group.component_fundamental(component, w)))
    }

    pub fn rank_eta(&self) -> u64 {
        weyl_u64(&self.levi, &self.config.eta)
    }

    pub fn rank_xi(&self) -> u64 {
        self.config.xi.iter().map(|w| weyl_u64(&self.levi, w)).sum()
    }

    pub fn dim_ambient(&self) -> u64 {
        weyl_u64(&self.group, &self.config.ambient)
    }

    /// Dimension of the base `G/P`.
    pub fn dim_base(&self) -> usize {
        self.group.positive_roots().len() - self.levi.positive_roots().len()
    }

    /// Levi characters of the `gr(ξ)` pieces.
    pub fn xi_characters(&self, settings: Settings) -> Result<Vec<crate::decompose::Character>> {
        let e = Engine::new(&self.levi, settings);
        self.config.xi.iter().map(|w| e.irrep_character(w)).collect()
    }
}

fn weyl_u64(g: &RootDatum, w: &[i64]) -> u64 {
    use num_traits::ToPrimitive;
    g.weyl_dim_signed(w).to_u64().unwrap_or(u64::MAX)
}
