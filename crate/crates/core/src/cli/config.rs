//! Sectioned `key = value` run configuration.
//!
//! ```text
//! # comment
//! [field]
//! characteristic = 0
//! cyclotomic_order = 3
//!
//! [group]
//! catalog = SL(2,3)            # or: name = G, points = 4, generator = s: (1 2)
//!
//! [orbits]
//! block = a^4 ; a -> -zeta     # representative ; centralizer generator -> χ value
//!
//! [diagonal]
//! row = -1 i -1                # braiding matrix rows, instead of [group]/[orbits]
//! operator = flip: 3 2 1 ; 1 1 1
//!
//! [run]
//! max_degree = 24
//! traces = classes             # or a comma-separated list of elements
//! factor_bounds = 5 24
//! duality_shortcut = false
//! verify_level = fast          # or full
//! xi_orbit = false
//!
//! [subnichols]
//! generators = (1 2), (2 3)
//!
//! [toy]
//! decomposition = abelianization   # or: orders = 2 2 / image = a: 1 0
//!
//! [expect]
//! dimension = 12
//! hilbert = (2)_{t}^2 (3)_{t}
//! (1 2) = (2)_{-t}^2 (3)_{t}
//! ```

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::qfactor::FactorBounds;
use crate::scalars::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    Catalog(String),
    Generators {
        name: String,
        points: usize,
        generators: Vec<(String, String)>,
    },
}

/// One summand `O_rep^χ`; `chi` lists `(centralizer element, value)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub rep: String,
    pub chi: Vec<(String, String)>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpec {
    pub name: String,
    /// 0-based images.
    pub perm: Vec<usize>,
    pub scalars: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSpec {
    pub rows: Vec<Vec<String>>,
    pub operators: Vec<OperatorSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    Fast,
    Full,
}

impl std::str::FromStr for VerifyLevel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fast" => Ok(VerifyLevel::Fast),
            "full" => Ok(VerifyLevel::Full),
            other => Err(format!("verify level must be fast or full, not `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunSpec {
    pub max_degree: usize,
    /// `None` means every conjugacy class (or every operator).
    pub traces: Option<Vec<String>>,
    pub factor_bounds: FactorBounds,
    pub duality_shortcut: bool,
    pub verify_level: VerifyLevel,
    pub xi_orbit: bool,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            max_degree: crate::nichols::DEFAULT_DEGREE_CAP,
            traces: None,
            factor_bounds: FactorBounds::default(),
            duality_shortcut: false,
            verify_level: VerifyLevel::Fast,
            xi_orbit: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToySpec {
    Abelianization,
    Images {
        orders: Vec<u32>,
        images: Vec<(String, Vec<u32>)>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub dimension: Option<usize>,
    pub hilbert: Option<String>,
    /// `(element or operator, notation, line)`
    pub traces: Vec<(String, String, usize)>,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub path: PathBuf,
    pub field: FieldSpec,
    pub group: Option<GroupSource>,
    pub orbits: Vec<BlockSpec>,
    pub diagonal: Option<DiagonalSpec>,
    pub run: RunSpec,
    pub subnichols: Option<Vec<String>>,
    pub toy: Option<ToySpec>,
    pub expect: Expectations,
}

fn list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(path, &text)
    }

    pub fn parse(path: &Path, text: &str) -> Result<Config> {
        let err = |line: usize, message: String| Error::Config {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut characteristic = 0u64;
        let mut cyclotomic_order = 1u32;
        let mut catalog = None;
        let mut gname = None;
        let mut points = None;
        let mut generators = Vec::new();
        let mut orbits = Vec::new();
        let mut rows = Vec::new();
        let mut operators = Vec::new();
        let mut run = RunSpec::default();
        let mut subnichols = None;
        let mut toy = None;
        let mut toy_orders = None;
        let mut toy_images = Vec::new();
        let mut expect = Expectations::default();
        let mut section = String::new();

        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = name.trim().to_string();
                if ![
                    "field",
                    "group",
                    "orbits",
                    "diagonal",
                    "run",
                    "subnichols",
                    "toy",
                    "expect",
                ]
                .contains(&section.as_str())
                {
                    return Err(err(line, format!("unknown section [{section}]")));
                }
                continue;
            }
            let (key, value) = t
                .split_once('=')
                .ok_or_else(|| err(line, format!("expected `key = value`, got `{t}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| -> Result<u64> {
                v.parse().map_err(|_| {
                    err(
                        line,
                        format!("`{key}` needs a non-negative integer, got `{v}`"),
                    )
                })
            };
            let flag = |v: &str| -> Result<bool> {
                match v {
                    "true" | "yes" => Ok(true),
                    "false" | "no" => Ok(false),
                    _ => Err(err(line, format!("`{key}` needs true or false, got `{v}`"))),
                }
            };
            match (section.as_str(), key) {
                ("", _) => return Err(err(line, "key outside of any section".into())),
                ("field", "characteristic") => characteristic = num(value)?,
                ("field", "cyclotomic_order") => {
                    cyclotomic_order = u32::try_from(num(value)?)
                        .map_err(|_| err(line, "cyclotomic order too large".into()))?
                }
                ("group", "catalog") => catalog = Some(value.to_string()),
                ("group", "name") => gname = Some(value.to_string()),
                ("group", "points") => points = Some(num(value)? as usize),
                ("group", "generator") => {
                    let (n, c) = value
                        .split_once(':')
                        .ok_or_else(|| err(line, "generator needs `name: cycles`".into()))?;
                    generators.push((n.trim().to_string(), c.trim().to_string()));
                }
                ("orbits", "block") => {
                    let (rep, chi) = value.split_once(';').unwrap_or((value, ""));
                    let chi = list(chi)
                        .into_iter()
                        .map(|a| {
                            a.split_once("->")
                                .map(|(h, v)| (h.trim().to_string(), v.trim().to_string()))
                                .ok_or_else(|| {
                                    err(line, format!("χ value `{a}` needs `element -> scalar`"))
                                })
                        })
                        .collect::<Result<_>>()?;
                    orbits.push(BlockSpec {
                        rep: rep.trim().to_string(),
                        chi,
                        line,
                    });
                }
                ("diagonal", "row") => {
                    rows.push(value.split_whitespace().map(str::to_string).collect())
                }
                ("diagonal", "operator") => {
                    let (name, body) = value
                        .split_once(':')
                        .ok_or_else(|| err(line, "operator needs `name: perm ; scalars`".into()))?;
                    let (perm, scalars) = body
                        .split_once(';')
                        .ok_or_else(|| err(line, "operator needs `perm ; scalars`".into()))?;
                    let perm = perm
                        .split_whitespace()
                        .map(|p| match p.parse::<usize>() {
                            Ok(v) if v >= 1 => Ok(v - 1),
                            _ => Err(err(line, format!("bad permutation entry `{p}`"))),
                        })
                        .collect::<Result<_>>()?;
                    operators.push(OperatorSpec {
                        name: name.trim().to_string(),
                        perm,
                        scalars: scalars.split_whitespace().map(str::to_string).collect(),
                        line,
                    });
                }
                ("run", "max_degree") => run.max_degree = num(value)? as usize,
                ("run", "traces") => {
                    run.traces = if value == "classes" {
                        None
                    } else {
                        Some(list(value))
                    }
                }
                ("run", "factor_bounds") => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(err(line, "factor_bounds needs `max_n max_k`".into()));
                    }
                    run.factor_bounds = FactorBounds {
                        max_n: num(parts[0])? as u32,
                        max_k: num(parts[1])? as usize,
                    };
                }
                ("run", "duality_shortcut") => run.duality_shortcut = flag(value)?,
                ("run", "verify_level") => {
                    run.verify_level = value.parse().map_err(|m| err(line, m))?
                }
                ("run", "xi_orbit") => run.xi_orbit = flag(value)?,
                ("subnichols", "generators") => subnichols = Some(list(value)),
                ("toy", "decomposition") => {
                    if value != "abelianization" {
                        return Err(err(line, "decomposition must be `abelianization`".into()));
                    }
                    toy = Some(ToySpec::Abelianization);
                }
                ("toy", "orders") => {
                    toy_orders = Some(
                        value
                            .split_whitespace()
                            .map(|v| num(v).map(|x| x as u32))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                ("toy", "image") => {
                    let (g, img) = value
                        .split_once(':')
                        .ok_or_else(|| err(line, "image needs `generator: coordinates`".into()))?;
                    let img = img
                        .split_whitespace()
                        .map(|v| num(v).map(|x| x as u32))
                        .collect::<Result<Vec<_>>>()?;
                    toy_images.push((g.trim().to_string(), img));
                }
                ("expect", "dimension") => expect.dimension = Some(num(value)? as usize),
                ("expect", "hilbert") => expect.hilbert = Some(value.to_string()),
                ("expect", _) => expect
                    .traces
                    .push((key.to_string(), value.to_string(), line)),
                (s, _) => return Err(err(line, format!("unknown key `{key}` in [{s}]"))),
            }
        }

        let group = match (catalog, gname) {
            (Some(c), None) if generators.is_empty() => Some(GroupSource::Catalog(c)),
            (None, Some(name)) => Some(GroupSource::Generators {
                name,
                points: points.ok_or_else(|| err(0, "[group] needs `points`".into()))?,
                generators,
            }),
            (None, None) if generators.is_empty() => None,
            _ => {
                return Err(err(
                    0,
                    "[group] needs either `catalog` or `name`/`points`/`generator`".into(),
                ))
            }
        };
        let diagonal = (!rows.is_empty()).then_some(DiagonalSpec { rows, operators });
        if let Some(orders) = toy_orders {
            toy = Some(ToySpec::Images {
                orders,
                images: toy_images,
            });
        }
        if diagonal.is_some() && (group.is_some() || !orbits.is_empty()) {
            return Err(err(
                0,
                "[diagonal] cannot be combined with [group]/[orbits]".into(),
            ));
        }
        if diagonal.is_none() && group.is_none() {
            return Err(err(0, "need a [group] or a [diagonal] section".into()));
        }
        if group.is_some() && orbits.is_empty() && toy.is_none() {
            return Err(err(0, "[orbits] needs at least one `block`".into()));
        }
        Ok(Config {
            path: path.to_path_buf(),
            field: FieldSpec::new(characteristic, cyclotomic_order),
            group,
            orbits,
            diagonal,
            run,
            subnichols,
            toy,
            expect,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_section() {
        let text = "# S3\n[field]\ncharacteristic = 0\n[group]\ncatalog = S3\n[orbits]\nblock = (1 2) ; (1 2) -> -1\n[run]\ntraces = e, (1 2)\nverify_level = full\n[expect]\ndimension = 12\n(1 2) = (2)_{-t}^2 (3)_{t}\n";
        let c = Config::parse(Path::new("s3.conf"), text).unwrap();
        assert_eq!(c.group, Some(GroupSource::Catalog("S3".into())));
        assert_eq!(
            c.orbits[0].chi,
            vec![("(1 2)".to_string(), "-1".to_string())]
        );
        assert_eq!(
            c.run.traces,
            Some(vec!["e".to_string(), "(1 2)".to_string()])
        );
        assert_eq!(c.run.verify_level, VerifyLevel::Full);
        assert_eq!(c.expect.dimension, Some(12));
        assert_eq!(c.expect.traces[0].2, 13);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "[field]\ncharacteristic = 0\n[orbit]\n";
        match Config::parse(Path::new("x.conf"), text) {
            Err(Error::Config { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let text = "[field]\ncharacteristic = two\n";
        match Config::parse(Path::new("x.conf"), text) {
            Err(Error::Config { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("characteristic"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_operators_are_one_based() {
        let text = "[field]\ncyclotomic_order = 4\n[diagonal]\nrow = -1 i\nrow = i -1\noperator = flip: 2 1 ; 1 1\n";
        let c = Config::parse(Path::new("d.conf"), text).unwrap();
        let d = c.diagonal.unwrap();
        assert_eq!(d.operators[0].perm, vec![1, 0]);
    }
}
