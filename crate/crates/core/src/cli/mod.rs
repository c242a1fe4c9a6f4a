//! Batch runs: configuration, orchestration and reports.

pub mod config;
pub mod report;

use std::path::PathBuf;

use crate::braidings::{
    from_orbits, group_action_operator, GroupTypeBraiding, LetterOperator, YDRealization,
};
use crate::conjchar::{toy_table, ToyRow};
use crate::divisibility::{
    coinvariant_series, divisible_by_symbol, order_of_q, restrict_operator, sub_class_letters,
    xi_commutation, xi_orbit_span, SectorDecomposition,
};
use crate::error::{Error, Result};
use crate::groups::{
    catalog, parse_cycles, AbelianDecomposition, CentralizerCharacter, FiniteGroup,
    DEFAULT_ORDER_CAP,
};
use crate::nichols::{build, build_with, symmetrizer_rank_oracle, BuildOptions, NicholsAlgebra};
use crate::qfactor::{factor, parse_notation, qsymbol, QSymbolFactorization};
use crate::scalars::{Field, Scalar, TracePoly};
use crate::traces::{graded_trace, graded_trace_by_duality, poincare_check};

pub use config::{Config, VerifyLevel};

/// A letter operator with the label it is reported under.
#[derive(Clone, Debug)]
pub struct NamedOperator {
    pub label: String,
    pub op: LetterOperator,
    /// Group element behind the operator, for group realizations.
    pub element: Option<usize>,
}

/// Braiding, realization and operators resolved from a config.
#[derive(Clone, Debug)]
pub struct Problem {
    pub field: Field,
    pub braiding: GroupTypeBraiding,
    pub group: Option<(FiniteGroup, YDRealization)>,
    pub operators: Vec<NamedOperator>,
}

fn config_error(cfg: &Config, line: usize, message: String) -> Error {
    Error::Config {
        path: cfg.path.clone(),
        line,
        message,
    }
}

pub fn load_group(cfg: &Config) -> Result<Option<FiniteGroup>> {
    use config::GroupSource;
    Ok(match &cfg.group {
        None => None,
        Some(GroupSource::Catalog(name)) => Some(catalog(name)?),
        Some(GroupSource::Generators {
            name,
            points,
            generators,
        }) => {
            let perms = generators
                .iter()
                .map(|(_, c)| parse_cycles(c, *points))
                .collect::<Result<Vec<_>>>()?;
            let names = generators.iter().map(|(n, _)| n.clone()).collect();
            Some(FiniteGroup::from_generators(
                name,
                perms,
                names,
                DEFAULT_ORDER_CAP,
            )?)
        }
    })
}

impl Problem {
    pub fn from_config(cfg: &Config) -> Result<Problem> {
        let field = Field::new(cfg.field)?;
        if let Some(d) = &cfg.diagonal {
            let matrix = d
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| field.parse_scalar(s))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let braiding = GroupTypeBraiding::diagonal(field.clone(), matrix)?;
            let mut operators = vec![NamedOperator {
                label: "id".into(),
                op: LetterOperator::identity(&braiding),
                element: None,
            }];
            for o in &d.operators {
                let scalars = o
                    .scalars
                    .iter()
                    .map(|s| field.parse_scalar(s))
                    .collect::<Result<Vec<_>>>()?;
                let op = LetterOperator::new(&braiding, o.perm.clone(), scalars)
                    .map_err(|e| config_error(cfg, o.line, e.to_string()))?;
                operators.push(NamedOperator {
                    label: o.name.clone(),
                    op,
                    element: None,
                });
            }
            if let Some(wanted) = &cfg.run.traces {
                operators.retain(|o| wanted.contains(&o.label));
            }
            return Ok(Problem {
                field,
                braiding,
                group: None,
                operators,
            });
        }
        let group = load_group(cfg)?.expect("checked by the parser");
        let mut blocks = Vec::new();
        for b in &cfg.orbits {
            let at = |e: Error| config_error(cfg, b.line, e.to_string());
            let rep = group.parse_element(&b.rep).map_err(at)?;
            let values = b
                .chi
                .iter()
                .map(|(h, v)| Ok((group.parse_element(h)?, field.parse_scalar(v)?)))
                .collect::<Result<Vec<(usize, Scalar)>>>()
                .map_err(at)?;
            let chi = if values.is_empty() {
                CentralizerCharacter::trivial(&group, &field, rep)
            } else {
                CentralizerCharacter::from_generator_values(&group, &field, rep, &values)
                    .map_err(at)?
            };
            blocks.push((rep, chi));
        }
        let (braiding, real) = from_orbits(&group, &field, &blocks)?;
        let elements: Vec<(String, usize)> = match &cfg.run.traces {
            Some(list) => list
                .iter()
                .map(|s| Ok((s.clone(), group.parse_element(s)?)))
                .collect::<Result<_>>()?,
            None => group
                .conjugacy_classes()
                .into_iter()
                .map(|c| {
                    let label = if c[0] == group.identity() {
                        "e".into()
                    } else {
                        group.format_element(c[0])
                    };
                    (label, c[0])
                })
                .collect(),
        };
        let mut operators = Vec::new();
        for (label, g) in elements {
            // prefer the label used in the expectations for the same class
            let label = cfg
                .expect
                .traces
                .iter()
                .find(|(k, _, _)| {
                    group
                        .parse_element(k)
                        .is_ok_and(|h| group.are_conjugate(h, g))
                })
                .map_or(label, |(k, _, _)| k.clone());
            operators.push(NamedOperator {
                label,
                op: group_action_operator(&braiding, &real, g)?,
                element: Some(g),
            });
        }
        Ok(Problem {
            field,
            braiding,
            group: Some((group, real)),
            operators,
        })
    }
}

/// Flags that override or extend the config.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub cache_dir: Option<PathBuf>,
    pub verify_level: Option<VerifyLevel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLine {
    pub label: String,
    pub trace: TracePoly,
    pub factorization: QSymbolFactorization,
    pub at_one: Scalar,
    pub lambda: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub title: String,
    pub field: Field,
    pub hilbert: Vec<usize>,
    pub complete: bool,
    pub lines: Vec<TraceLine>,
    pub toy: Vec<(String, ToyRow)>,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn dimension(&self) -> usize {
        self.hilbert.iter().sum()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn line(&self, label: &str) -> Option<&TraceLine> {
        self.lines.iter().find(|l| l.label == label)
    }
}

fn check(
    checks: &mut Vec<Check>,
    name: impl Into<String>,
    passed: bool,
    detail: impl Into<String>,
) {
    checks.push(Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    });
}

fn toy_run(cfg: &Config, title: String) -> Result<RunReport> {
    let field = Field::new(cfg.field)?;
    let group =
        load_group(cfg)?.ok_or_else(|| config_error(cfg, 0, "[toy] needs a [group]".into()))?;
    let dec = match cfg.toy.as_ref().expect("toy run") {
        config::ToySpec::Abelianization => AbelianDecomposition::abelianization(&group),
        config::ToySpec::Images { orders, images } => {
            let mut rows = Vec::new();
            for name in group.generator_names() {
                let img = images.iter().find(|(g, _)| g == name).ok_or_else(|| {
                    config_error(cfg, 0, format!("no image for generator {name}"))
                })?;
                rows.push(img.1.clone());
            }
            AbelianDecomposition::from_generator_images(&group, orders.clone(), &rows)?
        }
    };
    let mut checks = Vec::new();
    let rows: Vec<(String, ToyRow)> = toy_table(&field, &group, &dec)
        .into_iter()
        .map(|r| (group.format_element(r.rep), r))
        .collect();
    for (label, r) in &rows {
        check(
            &mut checks,
            format!("toy prediction {label}"),
            r.holds,
            format!(
                "character {} vs prediction {}",
                r.character.format_coeffs(&field),
                r.prediction.expand(&field).format_coeffs(&field)
            ),
        );
    }
    Ok(RunReport {
        title,
        field,
        hilbert: Vec::new(),
        complete: true,
        lines: Vec::new(),
        toy: rows,
        checks,
    })
}

/// Builds, traces, factors and checks everything a config asks for.
pub fn execute(cfg: &Config, options: &RunOptions) -> Result<RunReport> {
    let title = cfg
        .path
        .file_stem()
        .map_or_else(|| "run".to_string(), |s| s.to_string_lossy().into_owned());
    if cfg.toy.is_some() && cfg.orbits.is_empty() && cfg.diagonal.is_none() {
        return toy_run(cfg, title);
    }
    let level = options.verify_level.unwrap_or(cfg.run.verify_level);
    let problem = Problem::from_config(cfg)?;
    let f = &problem.field;
    let n = build_with(
        &problem.braiding,
        &BuildOptions {
            max_degree: cfg.run.max_degree,
            cache_dir: options.cache_dir.clone(),
        },
        &|_, _| {},
    )?;
    let mut checks = Vec::new();
    let mut lines = Vec::new();
    for o in &problem.operators {
        let rep = if cfg.run.duality_shortcut && n.is_complete() {
            graded_trace_by_duality(&n, &o.op, &o.label)?
        } else {
            graded_trace(&n, &o.op, &o.label)?
        };
        let fac = factor(f, &rep.trace, &cfg.run.factor_bounds);
        lines.push(TraceLine {
            label: o.label.clone(),
            factorization: fac,
            trace: rep.trace,
            at_one: rep.at_one,
            lambda: rep.lambda_top,
        });
    }

    let hilbert = n.hilbert_series();
    if let Some(d) = cfg.expect.dimension {
        check(
            &mut checks,
            "dimension",
            n.dimension() == d && n.is_complete(),
            format!("{} (expected {d})", n.dimension()),
        );
    }
    if let Some(h) = &cfg.expect.hilbert {
        let want = parse_notation(f, h)?;
        check(
            &mut checks,
            "hilbert series",
            want == n.hilbert_poly(),
            if want == n.hilbert_poly() {
                format!("got {h}")
            } else {
                format!("got {:?}, expected {h}", hilbert)
            },
        );
    }
    for (key, notation, line) in &cfg.expect.traces {
        let want =
            parse_notation(f, notation).map_err(|e| config_error(cfg, *line, e.to_string()))?;
        let got = match lines.iter().find(|l| &l.label == key) {
            Some(l) => Some(l.trace.clone()),
            None => match &problem.group {
                Some((g, real)) => {
                    let h = g
                        .parse_element(key)
                        .map_err(|e| config_error(cfg, *line, e.to_string()))?;
                    let op = group_action_operator(&problem.braiding, real, h)?;
                    Some(graded_trace(&n, &op, key)?.trace)
                }
                None => None,
            },
        };
        let passed = got.as_ref() == Some(&want);
        let detail = match &got {
            Some(_) if passed => format!("got {notation}"),
            Some(t) => format!(
                "got {}, expected {notation}",
                factor(f, t, &cfg.run.factor_bounds).notation(f)
            ),
            None => "not traced".into(),
        };
        check(&mut checks, format!("trace {key}"), passed, detail);
    }
    for l in &lines {
        let back = parse_notation(f, &l.factorization.notation(f))?;
        check(
            &mut checks,
            format!("factorization round-trip {}", l.label),
            back == l.trace,
            l.factorization.notation(f),
        );
    }

    if level == VerifyLevel::Full {
        full_checks(cfg, &problem, &n, &lines, &mut checks)?;
    }
    Ok(RunReport {
        title,
        field: f.clone(),
        hilbert,
        complete: n.is_complete(),
        lines,
        toy: Vec::new(),
        checks,
    })
}

fn full_checks(
    cfg: &Config,
    problem: &Problem,
    n: &NicholsAlgebra,
    lines: &[TraceLine],
    checks: &mut Vec<Check>,
) -> Result<()> {
    let f = &problem.field;
    let b = &problem.braiding;
    if b.len() <= 6 {
        let top = n.max_degree().min(3);
        let hs = n.hilbert_series();
        let ok = (0..=top).all(|d| {
            symmetrizer_rank_oracle(b, d)
                .map(|r| r == hs[d])
                .unwrap_or(false)
        });
        check(
            checks,
            "symmetrizer oracle",
            ok,
            format!("degrees 0..={top}"),
        );
    }
    if n.is_complete() {
        let hs = n.hilbert_series();
        let pal = hs.iter().eq(hs.iter().rev());
        check(checks, "hilbert palindromic", pal, format!("{hs:?}"));
        for o in &problem.operators {
            let (lambda, holds) = poincare_check(n, &o.op)?;
            check(
                checks,
                format!("poincare duality {}", o.label),
                holds,
                format!("λ = {}", f.format(&lambda)),
            );
        }
    }
    for l in lines {
        let mut ok = true;
        for k in 1..=6usize {
            for lambda in f.unit_roots() {
                if !f.is_one(&f.pow(&lambda, k as i64)) {
                    continue;
                }
                let s = SectorDecomposition::new(f, &l.trace, k, lambda.clone());
                ok &= s.is_balanced(f) == divisible_by_symbol(f, &l.trace, k, &lambda);
            }
        }
        check(
            checks,
            format!("balancedness {}", l.label),
            ok,
            "k ≤ 6, all λ with λ^k = 1",
        );
    }
    if let Some(gens) = &cfg.subnichols {
        subnichols_checks(problem, n, gens, checks)?;
    }
    if cfg.run.xi_orbit {
        let m = order_of_q(b)?;
        let span = xi_orbit_span(n, m)?;
        check(
            checks,
            "xi orbit spans",
            span == n.dimension(),
            format!("{span} of {}", n.dimension()),
        );
    }
    Ok(())
}

fn subnichols_checks(
    problem: &Problem,
    n: &NicholsAlgebra,
    gens: &[String],
    checks: &mut Vec<Check>,
) -> Result<()> {
    let f = &problem.field;
    let (g, real) = problem
        .group
        .as_ref()
        .ok_or_else(|| Error::ShiftCheck("[subnichols] needs a group realization".into()))?;
    if real.blocks().len() != 1 {
        return Err(Error::ShiftCheck(
            "[subnichols] needs a single orbit".into(),
        ));
    }
    let sub_gens = gens
        .iter()
        .map(|s| g.parse_element(s))
        .collect::<Result<Vec<_>>>()?;
    let sub = g.subgroup(&sub_gens);
    let rep = real.blocks()[0].rep;
    let letters = sub_class_letters(real, &sub, rep)?;
    let sub_b = problem.braiding.restrict(&letters)?;
    let sub_n = build(&sub_b, n.max_degree().max(1))?;
    let env: Vec<usize> = g.subgroup(
        &letters
            .iter()
            .map(|&x| real.letter_element(x))
            .collect::<Vec<_>>(),
    );
    let m = order_of_q(&problem.braiding)?;

    let k = coinvariant_series(n, &letters)?;
    let kpoly = TracePoly::from_ints(f, &k.iter().map(|&d| d as i64).collect::<Vec<_>>());
    let (quot, exact) = n.hilbert_poly().exact_div(f, &sub_n.hilbert_poly())?;
    check(
        checks,
        "sub-nichols coinvariants",
        exact && quot == kpoly,
        format!("dim B(M′) = {}, K series {k:?}", sub_n.dimension()),
    );
    for o in &problem.operators {
        let Some(h) = o.element else { continue };
        if env.binary_search(&h).is_err() {
            continue;
        }
        let sub_op = restrict_operator(&sub_b, &o.op, &letters)?;
        let sub_tr = graded_trace(&sub_n, &sub_op, &o.label)?.trace;
        let tr = graded_trace(n, &o.op, &o.label)?.trace;
        let divides = tr.exact_div(f, &sub_tr)?.1;
        check(
            checks,
            format!("sub-nichols divides {}", o.label),
            divides,
            format!(
                "divisor {}",
                factor(f, &sub_tr, &Default::default()).notation(f)
            ),
        );
        for x in (0..problem.braiding.len()).filter(|x| !letters.contains(x)) {
            if let Some(lambda) = xi_commutation(n, &o.op, x, m)? {
                let divisor = qsymbol(f, m, &lambda, 1).mul(f, &sub_tr);
                let divides = tr.exact_div(f, &divisor)?.1;
                check(
                    checks,
                    format!("shifted sub-nichols divides {}", o.label),
                    divides,
                    format!(
                        "x = {}, divisor {}",
                        problem.braiding.labels()[x],
                        factor(f, &divisor, &Default::default()).notation(f)
                    ),
                );
                break;
            }
        }
    }
    Ok(())
}
