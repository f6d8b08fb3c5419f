use std::io;

use mintaylor::harness::parse_checks;
use mintaylor::quotients::VarSet;
use mintaylor::taylor::SubsetBasisElement;
use mintaylor::{
    betti_formula, betti_oracle, build_taylor, check_order, classify, emit_report,
    enumerate_ideals, find_order, is_minimal_subset_test, parse_ideal, run_checks, BettiTable,
    EnumerationParams, Family, Format, MonomialIdeal, OrderedIdeal, QuotientError, RunMeta,
};
use serde_json::{json, Value};

use crate::output::{align, join, Rendered, View};
use crate::{Cli, Command, Failure, Method, Status};

/// Maps any library error to an exit status through its envelope flag.
trait Classified: std::fmt::Display {
    fn is_envelope(&self) -> bool;

    fn fail(&self) -> Failure {
        if self.is_envelope() {
            Failure::envelope(self.to_string())
        } else {
            Failure::usage(self.to_string())
        }
    }
}

macro_rules! classified {
    ($($t:ty),*) => {
        $(impl Classified for $t {
            fn is_envelope(&self) -> bool {
                <$t>::is_envelope(self)
            }
        })*
    };
}

classified!(
    mintaylor::TaylorError,
    mintaylor::QuotientError,
    mintaylor::BettiError,
    mintaylor::ClassifyError,
    mintaylor::EnumerateError
);

pub fn run(cli: &Cli, read: impl Fn(&str) -> io::Result<String>) -> Result<Rendered, Failure> {
    let format: Format = cli.format.into();
    let load = |arg: &str| -> Result<(MonomialIdeal, Vec<String>), Failure> {
        let n = cli
            .vars
            .ok_or_else(|| Failure::usage("--vars is required for text input"))?;
        let text = read(arg).map_err(|e| Failure::usage(format!("reading input: {e}")))?;
        let parsed = parse_ideal(&text, n).map_err(|e| Failure::usage(e.to_string()))?;
        let warnings = parsed
            .dropped
            .iter()
            .map(|m| format!("dropped non-minimal generator {m}"))
            .collect();
        Ok((parsed.ideal, warnings))
    };
    let (view, status, warnings) = match &cli.command {
        Command::Gens { ideal } => {
            let (ideal, warnings) = load(ideal)?;
            (gens(&ideal, &warnings), Status::Ok, warnings)
        }
        Command::Taylor { ideal, matrices } => {
            let (ideal, warnings) = load(ideal)?;
            (taylor(&ideal, *matrices)?, Status::Ok, warnings)
        }
        Command::IsMinimal { ideal } => {
            let (ideal, warnings) = load(ideal)?;
            (is_minimal(&ideal)?, Status::Ok, warnings)
        }
        Command::Linquo { ideal, order } => {
            let (ideal, warnings) = load(ideal)?;
            let (view, status) = linquo(&ideal, order.as_deref())?;
            (view, status, warnings)
        }
        Command::Betti { ideal, method } => {
            let (ideal, warnings) = load(ideal)?;
            let (view, status) = betti(&ideal, *method)?;
            (view, status, warnings)
        }
        Command::Classify { ideal } => {
            let (ideal, warnings) = load(ideal)?;
            (classify_view(&ideal)?, Status::Ok, warnings)
        }
        Command::Enumerate {
            max_deg,
            max_gens,
            family,
            checks,
        } => return enumerate(cli, *max_deg, *max_gens, family, checks.as_deref(), format),
    };
    Ok(Rendered {
        text: view.render(format),
        status,
        warnings,
    })
}

fn members(b: &SubsetBasisElement) -> Vec<usize> {
    b.member_indices().map(|i| i + 1).collect()
}

fn braces(v: &[usize]) -> String {
    format!("{{{}}}", join(v, ","))
}

fn gens(ideal: &MonomialIdeal, warnings: &[String]) -> View {
    let gens: Vec<String> = ideal.generators().iter().map(ToString::to_string).collect();
    let rows = gens
        .iter()
        .enumerate()
        .map(|(i, g)| vec![(i + 1).to_string(), g.clone()])
        .collect();
    let human = format!("{ideal}\n");
    let structured = json!({
        "n": ideal.n(),
        "generators": gens,
        "warnings": warnings,
    });
    let comments = warnings.iter().map(|w| format!("warning: {w}")).collect();
    View {
        human,
        structured,
        comments,
        header: vec!["index", "generator"],
        rows,
    }
}

fn taylor(ideal: &MonomialIdeal, matrices: bool) -> Result<View, Failure> {
    let complex = build_taylor(ideal.generators()).map_err(|e| e.fail())?;
    let minimal = complex.is_minimal();
    let mut human = format!("generators  {ideal}\n");
    let mut table = vec![vec!["q".to_string(), "rank".to_string()]];
    let mut strands = Vec::new();
    let mut rows = Vec::new();
    for (q, strand) in complex.strands().iter().enumerate() {
        table.push(vec![q.to_string(), strand.rank().to_string()]);
        let mut entries = Vec::new();
        if matrices && q > 0 {
            let prev = complex.strand(q - 1).expect("q > 0").basis();
            for (col, basis) in strand.columns().iter().zip(strand.basis()) {
                for e in col {
                    let row = members(&prev[e.row]);
                    let col = members(basis);
                    let sign = if e.sign > 0 { "+" } else { "-" };
                    rows.push(vec![
                        q.to_string(),
                        braces(&row),
                        braces(&col),
                        sign.to_string(),
                        e.monomial.to_string(),
                    ]);
                    entries.push(json!({
                        "row": row,
                        "col": col,
                        "sign": e.sign,
                        "monomial": e.monomial,
                    }));
                }
            }
        } else if !matrices {
            rows.push(vec![q.to_string(), strand.rank().to_string()]);
        }
        let mut s = json!({ "q": q, "rank": strand.rank() });
        if matrices {
            s["entries"] = Value::from(entries);
        }
        strands.push(s);
    }
    human.push_str(&align(&table));
    if matrices {
        for q in 1..complex.r() {
            human.push_str(&format!("d_{q}  (row, col, sign, monomial)\n"));
            let block: Vec<Vec<String>> = rows
                .iter()
                .filter(|r| r[0] == q.to_string())
                .map(|r| {
                    let mut v = vec![String::new()];
                    v.extend_from_slice(&r[1..]);
                    v
                })
                .collect();
            human.push_str(&align(&block));
        }
    }
    human.push_str(&format!("minimal     {minimal}\n"));
    let structured = json!({
        "generators": ideal.generators(),
        "ranks": complex.ranks(),
        "minimal": minimal,
        "strands": strands,
    });
    let header = if matrices {
        vec!["q", "row", "col", "sign", "monomial"]
    } else {
        vec!["q", "rank"]
    };
    Ok(View {
        human,
        structured,
        comments: vec![format!("ideal: {ideal}"), format!("minimal: {minimal}")],
        header,
        rows,
    })
}

fn is_minimal(ideal: &MonomialIdeal) -> Result<View, Failure> {
    let minimal = is_minimal_subset_test(ideal.generators()).map_err(|e| e.fail())?;
    Ok(View {
        human: format!("{minimal}\n"),
        structured: json!({ "ideal": ideal, "minimal": minimal }),
        header: vec!["ideal", "minimal"],
        rows: vec![vec![ideal.to_string(), minimal.to_string()]],
        ..View::default()
    })
}

fn set_text(s: &VarSet) -> String {
    braces(&s.iter().collect::<Vec<_>>())
}

fn ordered_view(o: &OrderedIdeal) -> View {
    let gens = o.ordered_generators();
    let rows: Vec<Vec<String>> = o
        .order()
        .iter()
        .zip(&gens)
        .zip(o.sets())
        .enumerate()
        .map(|(pos, ((&idx, g), s))| {
            vec![
                (pos + 1).to_string(),
                (idx + 1).to_string(),
                g.to_string(),
                set_text(s),
            ]
        })
        .collect();
    let mut table = vec![vec![
        "position".to_string(),
        "index".to_string(),
        "generator".to_string(),
        "set".to_string(),
    ]];
    table.extend(rows.iter().cloned());
    View {
        human: format!(
            "order       {}\nset sizes   {}\n{}",
            join(o.order().iter().map(|i| i + 1), ","),
            join(o.set_sizes(), ","),
            align(&table)
        ),
        structured: json!({ "linear_quotients": true, "ordered": o }),
        comments: vec![format!("ideal: {}", o.ideal())],
        header: vec!["position", "index", "generator", "set"],
        rows,
    }
}

fn linquo(ideal: &MonomialIdeal, order: Option<&[usize]>) -> Result<(View, Status), Failure> {
    match order {
        Some(order) => {
            if order.contains(&0) {
                return Err(Failure::usage("--order positions are 1-based"));
            }
            let zero_based: Vec<usize> = order.iter().map(|i| i - 1).collect();
            match check_order(ideal, &zero_based) {
                Ok(o) => Ok((ordered_view(&o), Status::Ok)),
                Err(QuotientError::NotLinear {
                    position,
                    generator,
                    witness,
                }) => {
                    let gen = ideal.generators()[generator];
                    let human = format!(
                        "not linear at position {position} (generator {} = {gen}): colon contains {witness}\n",
                        generator + 1
                    );
                    let view = View {
                        human,
                        structured: json!({
                            "linear_quotients": false,
                            "position": position,
                            "generator": gen,
                            "witness": witness,
                        }),
                        comments: vec![format!("ideal: {ideal}")],
                        header: vec!["position", "generator", "witness"],
                        rows: vec![vec![
                            position.to_string(),
                            gen.to_string(),
                            witness.to_string(),
                        ]],
                    };
                    Ok((view, Status::CheckFailed))
                }
                Err(e @ QuotientError::NotAPermutation { .. }) => {
                    Err(Failure::usage(e.to_string()))
                }
                Err(e) => Err(e.fail()),
            }
        }
        None => match find_order(ideal).map_err(|e| e.fail())? {
            Some(o) => Ok((ordered_view(&o), Status::Ok)),
            None => Ok((
                View {
                    human: "no linear-quotients order\n".into(),
                    structured: json!({ "linear_quotients": false }),
                    comments: vec![format!("ideal: {ideal}"), "linear_quotients: false".into()],
                    header: vec!["position", "index", "generator", "set"],
                    rows: Vec::new(),
                },
                Status::Ok,
            )),
        },
    }
}

fn betti_rows(method: &str, t: &BettiTable) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> = t
        .total()
        .iter()
        .enumerate()
        .map(|(q, b)| vec![method.into(), q.to_string(), String::new(), b.to_string()])
        .collect();
    if let Some(g) = t.graded() {
        rows.extend(
            g.iter().map(|(&(q, j), b)| {
                vec![method.into(), q.to_string(), j.to_string(), b.to_string()]
            }),
        );
    }
    rows
}

fn betti(ideal: &MonomialIdeal, method: Method) -> Result<(View, Status), Failure> {
    let formula = if method != Method::Oracle {
        let order = find_order(ideal).map_err(|e| e.fail())?;
        match order {
            Some(o) => Some(betti_formula(&o)),
            None if method == Method::Formula => {
                return Err(Failure {
                    status: Status::CheckFailed,
                    message: "the formula needs a linear-quotients order and none exists".into(),
                })
            }
            None => None,
        }
    } else {
        None
    };
    let oracle = if method != Method::Formula {
        Some(betti_oracle(ideal).map_err(|e| e.fail())?)
    } else {
        None
    };
    let agree = match (&formula, &oracle) {
        (Some(f), Some(o)) => Some(f.total() == o.total()),
        _ => None,
    };
    let mut human = String::new();
    let mut rows = Vec::new();
    for (name, t) in [("formula", &formula), ("oracle", &oracle)] {
        let Some(t) = t else { continue };
        human.push_str(&format!("{name:<8}  {}\n", join(t.total(), " ")));
        rows.extend(betti_rows(name, t));
    }
    if method == Method::Both && formula.is_none() {
        human.push_str("formula   n/a (no linear-quotients order)\n");
    }
    if let Some(g) = oracle.as_ref().and_then(BettiTable::graded) {
        let mut table = vec![vec![
            "q".to_string(),
            "degree".to_string(),
            "beta".to_string(),
        ]];
        table.extend(
            g.iter()
                .map(|(&(q, j), b)| vec![q.to_string(), j.to_string(), b.to_string()]),
        );
        human.push_str(&align(&table));
    }
    if let Some(a) = agree {
        human.push_str(&format!("agree     {a}\n"));
    }
    let structured = json!({
        "ideal": ideal,
        "formula": formula,
        "oracle": oracle,
        "agree": agree,
    });
    let mut comments = vec![format!("ideal: {ideal}")];
    if let Some(a) = agree {
        comments.push(format!("agree: {a}"));
    }
    let status = if agree == Some(false) {
        Status::CheckFailed
    } else {
        Status::Ok
    };
    Ok((
        View {
            human,
            structured,
            comments,
            header: vec!["method", "q", "degree", "beta"],
            rows,
        },
        status,
    ))
}

fn classify_view(ideal: &MonomialIdeal) -> Result<View, Failure> {
    let report = classify(ideal).map_err(|e| e.fail())?;
    let structured = serde_json::to_value(&report).expect("report serializes");
    let Value::Object(fields) = &structured else {
        unreachable!("reports serialize as objects")
    };
    // Field order follows the struct, not the map.
    let order = [
        "ideal",
        "taylor_minimal",
        "linear_quotients",
        "set_sizes",
        "stable",
        "thm22_form",
        "thm31_form",
        "linear_resolution",
        "matroidal",
        "squarefree_stable",
        "m_stats",
        "betti",
    ];
    let rows: Vec<Vec<String>> = order
        .iter()
        .map(|k| {
            let v = &fields[*k];
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            vec![k.to_string(), text]
        })
        .collect();
    Ok(View {
        human: align(&rows),
        structured,
        comments: Vec::new(),
        header: vec!["field", "value"],
        rows,
    })
}

fn enumerate(
    cli: &Cli,
    max_deg: u32,
    max_gens: usize,
    family: &str,
    checks: Option<&str>,
    format: Format,
) -> Result<Rendered, Failure> {
    let n = cli
        .vars
        .ok_or_else(|| Failure::usage("--vars is required for enumerate"))?;
    let family: Family = family
        .parse()
        .map_err(|e: mintaylor::EnumerateError| e.fail())?;
    let params = EnumerationParams {
        n,
        max_deg,
        max_gens,
        family,
    };
    let mut stream = enumerate_ideals(&params).map_err(|e| e.fail())?.peekable();
    let ideals: Vec<MonomialIdeal> = stream
        .by_ref()
        .take(cli.limit.unwrap_or(usize::MAX))
        .collect();
    // A limit that cut nothing leaves the run exhaustive.
    let exhaustive = stream.peek().is_none();
    let inputs = vec![format!(
        "n={n} max_deg={max_deg} max_gens={max_gens} family={family}"
    )];
    match checks {
        Some(spec) => {
            let checks = parse_checks(spec).map_err(Failure::usage)?;
            let meta = RunMeta {
                command: format!("enumerate --checks {}", join(checks.iter(), ",")),
                inputs,
                envelope: Some(format!(
                    "n <= {}, max_deg <= {}, max_gens <= {}",
                    family.max_vars(),
                    mintaylor::enumerate::MAX_ENUM_DEGREE,
                    mintaylor::taylor::MAX_TAYLOR_GENERATORS
                )),
                exhaustive,
                seed: None,
            };
            let report = run_checks(ideals, &checks, meta);
            let status = if report.success() {
                Status::Ok
            } else {
                Status::CheckFailed
            };
            Ok(Rendered {
                text: emit_report(&report, format),
                status,
                warnings: Vec::new(),
            })
        }
        None => {
            let list: Vec<String> = ideals.iter().map(ToString::to_string).collect();
            let view = View {
                human: list.iter().map(|s| format!("{s}\n")).collect(),
                structured: json!({
                    "inputs": inputs,
                    "exhaustive": exhaustive,
                    "count": list.len(),
                    "ideals": list,
                }),
                comments: vec![
                    format!("inputs: {}", inputs[0]),
                    format!("exhaustive: {exhaustive}"),
                    format!("count: {}", list.len()),
                ],
                header: vec!["ideal"],
                rows: list.iter().map(|s| vec![s.clone()]).collect(),
            };
            Ok(Rendered {
                text: view.render(format),
                status: Status::Ok,
                warnings: Vec::new(),
            })
        }
    }
}
