use crate::report::RunReport;
use crate::{HankelArg, MatrixArg, Outcome, SeqArg};
use clap::ValueEnum;
use num_traits::ToPrimitive;
use paperfold::catalanz::{build_catalan_matrix, BigMatrix, CatalanKind};
use paperfold::cfseries::{
    hankel_lu_rational, hankel_minors, stieltjes_extract, uniqueness_check, uniqueness_search,
    Example, MomentFunctional, UniquenessOutcome,
};
use paperfold::gf2sign::{build_tri, SmallMatrix, TriKind};
use paperfold::seq::{fold_stream, fold_word, SeqKind, SignSequence};
use paperfold::{Error, Result};
use serde_json::{json, Value};
use std::fmt::Write;

/// Largest index accepted by `word --index`.
pub const MAX_LETTER_INDEX: u64 = 1 << 62;
/// Plain reports list at most this many failures.
const PLAIN_FAILURES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

fn json_line(v: &Value) -> String {
    format!("{v}\n")
}

fn csv_lines(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("{header}\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

pub fn seq(f: Format, kind: SeqArg, count: usize) -> Result<String> {
    let kind = match kind {
        SeqArg::S => SeqKind::S,
        SeqArg::Stilde => SeqKind::STilde,
        SeqArg::Ttilde => SeqKind::TTilde,
        SeqArg::Mu => SeqKind::Mu,
        SeqArg::D => SeqKind::D,
        SeqArg::B0 => SeqKind::B0,
        SeqArg::Example1 => SeqKind::Example1,
    };
    let values = SignSequence::new(kind, count)?.prefix(count);
    let start = kind.first_index();
    Ok(match f {
        Format::Plain => {
            let words: Vec<String> = values.iter().map(i64::to_string).collect();
            format!("{}\n", words.join(" "))
        }
        Format::Csv => csv_lines(
            "n,value",
            values.iter().enumerate().map(|(i, v)| format!("{},{v}", start + i as i64)),
        ),
        Format::Json => json_line(&json!({ "start": start, "values": values })),
    })
}

pub fn word(f: Format, level: u32) -> Result<String> {
    let w = fold_word(level)?;
    Ok(match f {
        Format::Plain => format!("{w}\n"),
        Format::Csv => csv_lines(
            "position,var,sign",
            w.letters
                .iter()
                .enumerate()
                .map(|(i, l)| format!("{},{},{}", i + 1, l.var, l.sign)),
        ),
        Format::Json => json_line(&json!({
            "level": level,
            "length": w.len(),
            "letters": w.letters,
        })),
    })
}

pub fn letter(f: Format, n: u64) -> Result<String> {
    if n == 0 {
        return Err(Error::InvalidInput("letters are indexed from 1".into()));
    }
    if n > MAX_LETTER_INDEX {
        return Err(Error::SizeGuard {
            what: "letter index",
            value: n,
            max: MAX_LETTER_INDEX,
        });
    }
    let l = fold_stream(n);
    Ok(match f {
        Format::Plain => format!("{l}\n"),
        Format::Csv => csv_lines("position,var,sign", [format!("{n},{},{}", l.var, l.sign)]),
        Format::Json => json_line(&json!({ "index": n, "var": l.var, "sign": l.sign })),
    })
}

enum Grid {
    Small(SmallMatrix),
    Big(BigMatrix),
}

impl Grid {
    fn plain(&self) -> String {
        match self {
            Grid::Small(m) => m.render_plain(),
            Grid::Big(m) => m.render_plain(),
        }
    }

    fn string_rows(&self) -> Vec<Vec<String>> {
        match self {
            Grid::Small(m) => m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(i32::to_string).collect())
                .collect(),
            Grid::Big(m) => m.to_string_rows(),
        }
    }

    /// Small entries as JSON numbers, big ones as decimal strings.
    fn json_rows(&self) -> Value {
        match self {
            Grid::Small(m) => json!(m.to_rows()),
            Grid::Big(m) => json!(m.to_string_rows()),
        }
    }

    fn csv(&self) -> String {
        let rows = self.string_rows();
        let mut out = String::new();
        for r in rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn matrix(f: Format, kind: MatrixArg, size: usize) -> Result<String> {
    let tri = |k| build_tri(k, size).map(Grid::Small);
    let big = |k| build_catalan_matrix(k, size).map(Grid::Big);
    let grid = match kind {
        MatrixArg::L => tri(TriKind::L),
        MatrixArg::M => tri(TriKind::M),
        MatrixArg::Ltilde => tri(TriKind::LTilde),
        MatrixArg::Mtilde => tri(TriKind::MTilde),
        MatrixArg::Ltilde0 => tri(TriKind::LTilde0),
        MatrixArg::Mtilde0 => tri(TriKind::MTilde0),
        MatrixArg::LZ => big(CatalanKind::LZ),
        MatrixArg::MZ => big(CatalanKind::MZ),
        MatrixArg::LtildeZ => big(CatalanKind::LTildeZ),
        MatrixArg::MtildeZ => big(CatalanKind::MTildeZ),
    }?;
    let name = kind.to_possible_value().map(|v| v.get_name().to_string());
    Ok(match f {
        Format::Plain => grid.plain(),
        Format::Csv => grid.csv(),
        Format::Json => json_line(&json!({ "kind": name, "size": size, "rows": grid.json_rows() })),
    })
}

fn moments(source: HankelArg, count: usize) -> Result<MomentFunctional> {
    match source {
        HankelArg::Mu => Ok(MomentFunctional::mu(count)),
        HankelArg::MuShift => Ok(MomentFunctional::mu_shift(count)),
        HankelArg::Catalan => MomentFunctional::catalan(count),
        HankelArg::CatalanShift => MomentFunctional::catalan_shift(count),
    }
}

pub fn hankel(f: Format, source: HankelArg, size: usize) -> Result<String> {
    if size == 0 {
        return Err(Error::InvalidInput("matrix size must be at least 1".into()));
    }
    let m = moments(source, 2 * size - 1)?;
    let (l, d) = hankel_lu_rational(&m, size)?;
    let h = Grid::Big(m.hankel(size)?);
    let l = Grid::Big(l);
    let d: Vec<String> = d.iter().map(ToString::to_string).collect();
    let name = source.to_possible_value().map(|v| v.get_name().to_string());
    Ok(match f {
        Format::Plain => format!("H\n{}L\n{}D\n{}\n", h.plain(), l.plain(), d.join(" ")),
        Format::Csv => {
            let mut rows = Vec::new();
            for (tag, g) in [("H", &h), ("L", &l)] {
                for (i, r) in g.string_rows().iter().enumerate() {
                    for (j, v) in r.iter().enumerate() {
                        rows.push(format!("{tag},{i},{j},{v}"));
                    }
                }
            }
            rows.extend(d.iter().enumerate().map(|(i, v)| format!("D,{i},{i},{v}")));
            csv_lines("matrix,i,j,value", rows)
        }
        Format::Json => json_line(&json!({
            "source": name,
            "size": size,
            "hankel": h.string_rows(),
            "l": l.string_rows(),
            "d": d,
        })),
    })
}

pub fn cf(f: Format, example: u32, order: usize) -> Result<String> {
    let ex = Example::from_index(example)
        .ok_or_else(|| Error::InvalidInput(format!("no example {example}")))?;
    let series = ex.limit(order)?;
    Ok(match f {
        Format::Plain => format!("{series}\n"),
        Format::Csv => csv_lines(
            "k,coeff",
            series.to_strings().into_iter().enumerate().map(|(k, c)| format!("{k},{c}")),
        ),
        Format::Json => json_line(&json!({ "example": example, "order": order, "series": series })),
    })
}

pub fn jacobi(f: Format, depth: usize) -> Result<String> {
    let cf = stieltjes_extract(&MomentFunctional::mu(2 * depth + 1), depth)?;
    let a: Vec<String> = cf.a.iter().map(ToString::to_string).collect();
    let b: Vec<String> = cf.b.iter().map(ToString::to_string).collect();
    Ok(match f {
        Format::Plain => format!("a: {}\nb: {}\n", a.join(" "), b.join(" ")),
        Format::Csv => csv_lines(
            "k,a,b",
            a.iter().enumerate().map(|(k, av)| {
                let bv = if k == 0 { "" } else { &b[k - 1] };
                format!("{k},{av},{bv}")
            }),
        ),
        Format::Json => json_line(&json!({ "depth": depth, "cf": cf })),
    })
}

pub fn dets(f: Format, max: usize) -> Result<String> {
    if max == 0 {
        return Err(Error::InvalidInput("--max must be at least 1".into()));
    }
    let minors = hankel_minors(&MomentFunctional::mu(2 * max), max)?;
    let values: Vec<Value> = minors
        .iter()
        .map(|r| match r.to_integer().to_i64() {
            Some(v) if r.is_integer() => json!(v),
            _ => json!(r.to_string()),
        })
        .collect();
    Ok(match f {
        Format::Plain => {
            let mut out = String::new();
            for (k, r) in minors.iter().enumerate() {
                let _ = writeln!(out, "{} {r}", k + 1);
            }
            out
        }
        Format::Csv => csv_lines(
            "n,det",
            minors.iter().enumerate().map(|(k, r)| format!("{},{r}", k + 1)),
        ),
        Format::Json => json_line(&json!({ "max": max, "dets": values })),
    })
}

fn parse_signs(list: &str) -> Result<Vec<i8>> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<i8>()
                .map_err(|_| Error::InvalidInput(format!("cannot read {t:?} as an entry")))
        })
        .collect()
}

fn joined(c: &[i8]) -> String {
    c.iter().map(i8::to_string).collect::<Vec<_>>().join(",")
}

pub fn unique_check(f: Format, list: &str) -> Result<Outcome> {
    let c = parse_signs(list)?;
    let outcome = uniqueness_check(&c)?;
    let text = match f {
        Format::Plain | Format::Csv => {
            let (result, detail) = match &outcome {
                UniquenessOutcome::Pass { eps } => ("PASS", joined(eps)),
                UniquenessOutcome::Fail { n, which } => {
                    let w = serde_json::to_value(which).unwrap_or_default();
                    ("FAIL", format!("{} {n}", w.as_str().unwrap_or("")))
                }
            };
            if f == Format::Plain {
                match &outcome {
                    UniquenessOutcome::Pass { .. } => format!("{result} eps={detail}\n"),
                    UniquenessOutcome::Fail { .. } => format!("{result} {detail}\n"),
                }
            } else {
                csv_lines("result,detail", [format!("{result},{detail}")])
            }
        }
        Format::Json => json_line(&json!({ "input": c, "outcome": outcome })),
    };
    Ok(Outcome {
        failed: !outcome.passed(),
        text,
    })
}

pub fn unique_search(f: Format, length: usize) -> Result<String> {
    let survivors = uniqueness_search(length)?;
    Ok(match f {
        Format::Plain => {
            let mut out = String::new();
            for s in &survivors {
                let _ = writeln!(out, "{}", joined(s));
            }
            out
        }
        Format::Csv => csv_lines(
            &(0..length).map(|i| format!("c{i}")).collect::<Vec<_>>().join(","),
            survivors.iter().map(|s| joined(s)),
        ),
        Format::Json => json_line(&json!({ "length": length, "survivors": survivors })),
    })
}

pub fn run_report(f: Format, r: &RunReport) -> String {
    match f {
        Format::Plain => {
            let mut out = String::new();
            for s in &r.suites {
                let tag = if s.pass { "PASS" } else { "FAIL" };
                let conj = if s.conjecture { " (conjecture)" } else { "" };
                let _ = writeln!(out, "{tag} {} size={}{conj}", s.suite, s.size);
            }
            for fl in r.failures.iter().take(PLAIN_FAILURES) {
                let _ = writeln!(
                    out,
                    "  {} ({}, {}): expected {}, got {}",
                    fl.check, fl.i, fl.j, fl.expected, fl.got
                );
            }
            if r.failures.len() > PLAIN_FAILURES {
                let _ = writeln!(out, "  ... {} more", r.failures.len() - PLAIN_FAILURES);
            }
            let tag = if r.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{}: {tag}", r.suite);
            out
        }
        Format::Csv => csv_lines(
            "suite,size,pass,conjecture,failures",
            r.suites.iter().map(|s| {
                format!("{},{},{},{},{}", s.suite, s.size, s.pass, s.conjecture, s.failures)
            }),
        ),
        Format::Json => format!("{}\n", serde_json::to_string(r).expect("report serialises")),
    }
}
