//! Session configuration (TOML) and the bundled fixtures.

use serde::{Deserialize, Serialize};

use crate::base_algebra::FqField;
use crate::drinfeld::module::DrinfeldSpec;
use crate::drinfeld::DrinfeldModule;
use crate::error::{AtStage, Error, Result};
use crate::function_field::lattice::DEFAULT_DEGREE_BOUND;
use crate::function_field::{build_cover, fixtures, taming_module, CoverSpec, GaloisCover, TamingModule};
use crate::group_algebra::decomposition::catalog_lookup;
use crate::group_algebra::freeness::DEFAULT_SEED;
use crate::group_algebra::{DecompositionData, FiniteGroup};
use crate::invariants::checks::Options;
use crate::invariants::classmod::STABILIZATION_BUDGET;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    /// name of a bundled fixture supplying `cover` and `drinfeld`
    #[serde(default)]
    pub fixture: Option<String>,
    #[serde(default)]
    pub cover: Option<CoverSpec>,
    #[serde(default)]
    pub drinfeld: Option<DrinfeldSpec>,
    #[serde(default = "default_precision")]
    pub precision: usize,
    /// isometry ball index for units / class module; smallest certified if absent
    #[serde(default)]
    pub ball: Option<usize>,
    /// ball index for the trace formula; smallest admissible if absent
    #[serde(default)]
    pub trace_ball: Option<usize>,
    #[serde(default = "default_budget")]
    pub budget: i64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// prime degree bound for the taming-module freeness sweep
    #[serde(default = "default_degree_bound")]
    pub taming_degree_bound: usize,
    /// "catalog" (default), "abelian" or "s3-f2"
    #[serde(default)]
    pub decomposition: Option<String>,
}

fn default_precision() -> usize {
    4
}
fn default_budget() -> i64 {
    STABILIZATION_BUDGET
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_degree_bound() -> usize {
    DEFAULT_DEGREE_BOUND
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            fixture: None,
            cover: None,
            drinfeld: None,
            precision: default_precision(),
            ball: None,
            trace_ball: None,
            budget: default_budget(),
            seed: default_seed(),
            taming_degree_bound: default_degree_bound(),
            decomposition: None,
        }
    }
}

pub struct Session {
    pub config: SessionConfig,
    pub fixture: Option<&'static Fixture>,
    pub cover: GaloisCover,
    pub e: DrinfeldModule,
    pub m: TamingModule,
    pub dec: DecompositionData,
}

impl SessionConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let c: SessionConfig = toml::from_str(text).map_err(|e| {
            let at = e.span().map(|sp| {
                let line = text[..sp.start].matches('\n').count();
                format!("line {}: `{}`: ", line + 1, text.lines().nth(line).unwrap_or("").trim())
            });
            Error::Config(format!("{}{}", at.unwrap_or_default(), e.message()))
        })?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn for_fixture(name: &str) -> Self {
        SessionConfig { fixture: Some(name.into()), ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision == 0 {
            return Err(Error::Config("precision: must be at least 1".into()));
        }
        if self.budget < 1 {
            return Err(Error::Config("budget: must be at least 1".into()));
        }
        if let Some(f) = &self.fixture {
            let fx = fixture(f)?;
            if fx.cover.is_none() && self.cover.is_none() {
                return Err(Error::Config(format!("fixture: {f} carries no cover; supply [cover]")));
            }
        } else if self.cover.is_none() {
            return Err(Error::Config("cover: missing (give [cover] or fixture)".into()));
        }
        if let Some(d) = &self.decomposition {
            if !["catalog", "abelian", "s3-f2"].contains(&d.as_str()) {
                return Err(Error::Config(format!("decomposition: unknown catalog entry {d:?}")));
            }
        }
        Ok(())
    }

    pub fn options(&self) -> Options {
        Options { ball_index: self.ball, seed: self.seed, budget: self.budget, prime_bound: None }
    }

    pub fn session(&self) -> Result<Session> {
        self.validate()?;
        let fx = self.fixture.as_deref().map(fixture).transpose()?;
        let spec = self.cover.clone().or_else(|| fx.and_then(|f| f.cover())).expect("validated");
        let cover = build_cover(&spec).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("cover.{m}")),
            e => e,
        })?;
        let dspec = self
            .drinfeld
            .clone()
            .or_else(|| fx.map(|f| f.drinfeld()))
            .unwrap_or(DrinfeldSpec { coefficients: vec![vec![1]] });
        let e = DrinfeldModule::from_spec(&cover.fq, &dspec).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("drinfeld.coefficients: {m}")),
            e => e,
        })?;
        let m = taming_module(&cover, None, self.taming_degree_bound).at("taming module")?;
        let dec = self.decomposition_data(&cover)?;
        Ok(Session { config: self.clone(), fixture: fx, cover, e, m, dec })
    }

    fn decomposition_data(&self, cover: &GaloisCover) -> Result<DecompositionData> {
        let (fq, g) = (&cover.fq, &*cover.group);
        let mut dec = match self.decomposition.as_deref() {
            None | Some("catalog") => catalog_lookup(fq, g)
                .ok_or_else(|| Error::Config(format!("decomposition: no catalog entry for F_{}[{}]", fq.q, g.name)))?,
            Some("abelian") if g.abelian => DecompositionData::abelian(fq, g),
            Some("s3-f2") if g.name == "S3" && fq.q == 2 => DecompositionData::s3_over_f2(fq),
            Some(d) => return Err(Error::Config(format!("decomposition: {d} does not apply to F_{}[{}]", fq.q, g.name))),
        };
        let rep = dec.verify(g, fq).at("decomposition")?;
        if !rep.ok() {
            return Err(Error::DecompositionInvalid(rep.violations.join("; ")).at("decomposition"));
        }
        Ok(dec)
    }
}

pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    cover: Option<fn() -> CoverSpec>,
    coefficients: &'static [&'static [i64]],
}

impl Fixture {
    pub fn cover(&self) -> Option<CoverSpec> {
        self.cover.map(|f| f())
    }

    pub fn drinfeld(&self) -> DrinfeldSpec {
        DrinfeldSpec { coefficients: self.coefficients.iter().map(|c| c.to_vec()).collect() }
    }

    pub fn config(&self) -> SessionConfig {
        SessionConfig {
            cover: self.cover(),
            drinfeld: self.cover.map(|_| self.drinfeld()),
            decomposition: self.cover.is_none().then(|| "s3-f2".to_string()),
            ..Default::default()
        }
    }

    /// The S₃ entry: the group and the decomposition it demonstrates.
    pub fn decomposition_demo(&self) -> Option<(FiniteGroup, DecompositionData)> {
        if self.cover.is_some() {
            return None;
        }
        let fq = FqField::prime(2).ok()?;
        Some((FiniteGroup::s3(), DecompositionData::s3_over_f2(&fq)))
    }
}

fn carlitz_f2() -> CoverSpec {
    fixtures::trivial(2)
}
fn carlitz_f3() -> CoverSpec {
    fixtures::trivial(3)
}

pub static FIXTURES: &[Fixture] = &[
    Fixture { name: "carlitz-f2", summary: "Carlitz module over F_2[t], K = k", cover: Some(carlitz_f2), coefficients: &[&[1]] },
    Fixture { name: "carlitz-f3", summary: "Carlitz module over F_3[t], K = k", cover: Some(carlitz_f3), coefficients: &[&[1]] },
    Fixture {
        name: "carlitz-torsion-c2-f3",
        summary: "Carlitz module, K = k(x) with x² = −t (Carlitz t-torsion), G = C₂, q = 3",
        cover: Some(fixtures::carlitz_torsion_f3),
        coefficients: &[&[1]],
    },
    Fixture {
        name: "rank2-f2",
        summary: "rank-2 module φ(t) = t + τ + t·τ² over F_2[t], K = k",
        cover: Some(carlitz_f2),
        coefficients: &[&[1], &[0, 1]],
    },
    Fixture {
        name: "nontrivial-h-f2",
        summary: "φ(t) = t + t³·τ over F_2[t], K = k; H ≅ A/(t)",
        cover: Some(carlitz_f2),
        coefficients: &[&[0, 0, 0, 1]],
    },
    Fixture {
        name: "wild-c2-f2",
        summary: "Carlitz module, Artin–Schreier C₂ cover over F_2 wild at t, with taming module",
        cover: Some(fixtures::wild_f2),
        coefficients: &[&[1]],
    },
    Fixture {
        name: "s3-f2-demo",
        summary: "decomposition F_2[S₃] ≅ F_2[C₂] ⊕ M₂(F_2) (no cover)",
        cover: None,
        coefficients: &[],
    },
];

pub fn fixture(name: &str) -> Result<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name).ok_or_else(|| {
        let names: Vec<&str> = FIXTURES.iter().map(|f| f.name).collect();
        Error::Config(format!("fixture: unknown name {name:?}; known: {}", names.join(", ")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_with_a_cover_builds() {
        for f in FIXTURES {
            let c = SessionConfig::for_fixture(f.name);
            match f.cover {
                Some(_) => {
                    let s = c.session().unwrap_or_else(|e| panic!("{}: {e}", f.name));
                    assert_eq!(s.e.coeffs.len(), f.coefficients.len());
                }
                None => {
                    assert!(matches!(c.session(), Err(Error::Config(_))));
                    let (g, mut d) = f.decomposition_demo().unwrap();
                    let fq = FqField::prime(2).unwrap();
                    assert!(d.verify(&g, &fq).unwrap().ok());
                }
            }
        }
    }

    #[test]
    fn schema_errors_name_the_field() {
        let e = SessionConfig::from_toml("fixture = \"carlitz-f2\"\nprecison = 3\n").unwrap_err();
        assert!(e.to_string().contains("precison"), "{e}");
        let e = SessionConfig::from_toml("fixture = \"carlitz-f2\"\nprecision = 0\n").unwrap_err();
        assert!(e.to_string().contains("precision"), "{e}");
        let e = SessionConfig::from_toml("fixture = \"carlitz-f2\"\nprecision = \"six\"\n").unwrap_err();
        assert!(e.to_string().contains("precision = "), "{e}");
        let e = SessionConfig::from_toml("precision = 3\n").unwrap_err();
        assert!(e.to_string().contains("cover"), "{e}");
        let e = SessionConfig::from_toml("fixture = \"nope\"\n").unwrap_err();
        assert!(e.to_string().contains("fixture"), "{e}");
    }

    #[test]
    fn fixture_config_round_trips_through_toml() {
        let c = fixture("carlitz-torsion-c2-f3").unwrap().config();
        let text = toml::to_string(&c).unwrap();
        let back = SessionConfig::from_toml(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.session().unwrap().cover.group.order, 2);
    }
}
