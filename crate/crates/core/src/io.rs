//! File formats.
//!
//! All inputs are JSON with rationals written as strings `"p/q"`.
//! Series have two encodings: the JSON schema
//! `{"cutoff": "L", "terms": [{"exponent": "s", "coefficient": "c"}, ...]}`
//! and the tab-separated report printed by the command-line tool
//! (`exponent<TAB>coefficient` lines, then `cutoff<TAB>L`).

use serde::{Deserialize, Serialize};

use crate::domains::{CriticalPoint, MorseData, ToricDomain};
use crate::error::{Error, Result};
use crate::novikov::NovikovSeries;
use crate::orbits::{OrbitSet, OrbitType3D, Parity, SimpleOrbit};
use crate::persistence::{Barcode, FilteredComplex, Generator};
use crate::rational::{format_rational, parse_rational, Action, Rational};

fn rational_at(text: &str, location: impl Fn() -> String) -> Result<Rational> {
    parse_rational(text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(location(), format!("'{text}': {message}")),
        other => other,
    })
}

fn action_at(text: &str, location: impl Fn() -> String) -> Result<Action> {
    rational_at(text, location).map(Action::new)
}

fn parity_at(bit: u8, location: impl Fn() -> String) -> Result<Parity> {
    Parity::from_bit(bit)
        .ok_or_else(|| Error::parse(location(), format!("parity must be 0 or 1, got {bit}")))
}

fn json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("{what} line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRecord {
    exponent: String,
    coefficient: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesRecord {
    cutoff: String,
    terms: Vec<TermRecord>,
}

pub fn series_to_json(s: &NovikovSeries) -> String {
    let record = SeriesRecord {
        cutoff: s.cutoff().to_string(),
        terms: s
            .terms()
            .map(|(e, c)| TermRecord {
                exponent: e.to_string(),
                coefficient: format_rational(c),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&record).expect("series record serializes");
    out.push('\n');
    out
}

/// Strict reader: exponents strictly increasing and `<= cutoff`, no zero coefficients.
pub fn series_from_json(text: &str) -> Result<NovikovSeries> {
    let record: SeriesRecord = json(text, "series")?;
    let cutoff = action_at(&record.cutoff, || "series.cutoff".into())?;
    let mut terms: Vec<(Action, Rational)> = Vec::with_capacity(record.terms.len());
    for (i, t) in record.terms.iter().enumerate() {
        let e = action_at(&t.exponent, || format!("series.terms[{i}].exponent"))?;
        let c = rational_at(&t.coefficient, || format!("series.terms[{i}].coefficient"))?;
        check_term(&terms, &e, &c, &cutoff, || format!("series.terms[{i}]"))?;
        terms.push((e, c));
    }
    Ok(NovikovSeries::from_terms(terms, cutoff))
}

fn check_term(
    previous: &[(Action, Rational)],
    e: &Action,
    c: &Rational,
    cutoff: &Action,
    location: impl Fn() -> String,
) -> Result<()> {
    use num_traits::Zero;
    if c.is_zero() {
        return Err(Error::parse(location(), "zero coefficient"));
    }
    if e > cutoff {
        return Err(Error::parse(
            location(),
            format!("exponent {e} exceeds cutoff {cutoff}"),
        ));
    }
    if let Some((prev, _)) = previous.last() {
        if e <= prev {
            return Err(Error::parse(
                location(),
                "exponents must be strictly increasing",
            ));
        }
    }
    Ok(())
}

pub fn series_to_report(s: &NovikovSeries) -> String {
    let mut out = String::new();
    for (e, c) in s.terms() {
        out.push_str(&format!("{e}\t{}\n", format_rational(c)));
    }
    out.push_str(&format!("cutoff\t{}\n", s.cutoff()));
    out
}

pub fn series_from_report(text: &str) -> Result<NovikovSeries> {
    let mut terms: Vec<(Action, Rational)> = Vec::new();
    let mut cutoff = None;
    for (n, line) in text.lines().enumerate() {
        let location = || format!("line {}", n + 1);
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if cutoff.is_some() {
            return Err(Error::parse(location(), "content after the cutoff line"));
        }
        let (left, right) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(location(), "expected two tab-separated fields"))?;
        if left == "cutoff" {
            let l = action_at(right, location)?;
            for (i, (e, c)) in terms.iter().enumerate() {
                check_term(&terms[..i], e, c, &l, || format!("line {}", i + 1))?;
            }
            cutoff = Some(l);
        } else {
            let e = action_at(left, location)?;
            let c = rational_at(right, location)?;
            terms.push((e, c));
        }
    }
    let cutoff = cutoff.ok_or_else(|| Error::parse("end of input", "missing cutoff line"))?;
    Ok(NovikovSeries::from_terms(terms, cutoff))
}

/// Accepts either series encoding.
pub fn read_series(text: &str) -> Result<NovikovSeries> {
    if text.trim_start().starts_with('{') {
        series_from_json(text)
    } else {
        series_from_report(text)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitRecord {
    label: String,
    action: String,
    #[serde(rename = "type")]
    kind: Option<String>,
    eps1: Option<u8>,
    eps2: Option<u8>,
}

/// JSON array of `{label, action, type}` or `{label, action, eps1, eps2}`.
pub fn orbit_set_from_json(text: &str) -> Result<OrbitSet> {
    let records: Vec<OrbitRecord> = json(text, "orbit file")?;
    let mut orbits = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        let at = |field: &str| format!("orbits[{i}].{field}");
        let action = action_at(&r.action, || at("action"))?;
        let (eps1, eps2) = match (&r.kind, r.eps1, r.eps2) {
            (Some(kind), None, None) => OrbitType3D::from_name(kind)
                .ok_or_else(|| {
                    Error::parse(
                        at("type"),
                        format!("unknown orbit type '{kind}' (elliptic, pos-hyperbolic, neg-hyperbolic)"),
                    )
                })?
                .parities(),
            (None, Some(e1), Some(e2)) => (parity_at(e1, || at("eps1"))?, parity_at(e2, || at("eps2"))?),
            _ => {
                return Err(Error::parse(
                    format!("orbits[{i}]"),
                    "give either 'type' or both 'eps1' and 'eps2'",
                ))
            }
        };
        orbits.push(SimpleOrbit::new(r.label.clone(), action, eps1, eps2)?);
    }
    OrbitSet::new(orbits)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorRecord {
    label: String,
    eps: u8,
    filtration: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRecord {
    from: String,
    to: String,
    coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexRecord {
    generators: Vec<GeneratorRecord>,
    #[serde(default)]
    differential: Vec<EntryRecord>,
}

/// `{generators: [{label, eps, filtration}], differential: [{from, to, coeff}]}`;
/// the complex is parsed but not validated.
pub fn complex_from_json(text: &str) -> Result<FilteredComplex> {
    let record: ComplexRecord = json(text, "complex file")?;
    let mut generators = Vec::with_capacity(record.generators.len());
    for (i, g) in record.generators.iter().enumerate() {
        let at = |field: &str| format!("generators[{i}].{field}");
        generators.push(Generator::new(
            g.label.clone(),
            parity_at(g.eps, || at("eps"))?,
            action_at(&g.filtration, || at("filtration"))?,
        ));
    }
    let mut entries = Vec::with_capacity(record.differential.len());
    for (i, e) in record.differential.iter().enumerate() {
        let c = rational_at(&e.coeff, || format!("differential[{i}].coeff"))?;
        entries.push((e.from.as_str(), e.to.as_str(), c));
    }
    FilteredComplex::from_labels(generators, &entries)
}

#[derive(Serialize)]
struct BarRecord {
    birth: String,
    death: String,
    eps: u8,
}

pub fn barcode_to_json(b: &Barcode) -> String {
    let records: Vec<BarRecord> = b
        .bars()
        .iter()
        .map(|bar| BarRecord {
            birth: bar.birth().to_string(),
            death: bar.death().to_string(),
            eps: bar.eps().bit(),
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&records).expect("barcode serializes");
    out.push('\n');
    out
}

/// `birth<TAB>death<TAB>eps` per bar, `inf` for infinite deaths.
pub fn barcode_to_report(b: &Barcode) -> String {
    b.bars()
        .iter()
        .map(|bar| format!("{}\t{}\t{}\n", bar.birth(), bar.death(), bar.eps()))
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CriticalPointRecord {
    label: String,
    action: String,
    index: u8,
}

/// JSON array of `{label, action, index}`.
pub fn morse_from_json(text: &str) -> Result<MorseData> {
    let records: Vec<CriticalPointRecord> = json(text, "Morse file")?;
    let mut points = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        points.push(CriticalPoint {
            label: r.label.clone(),
            action: action_at(&r.action, || format!("critical_points[{i}].action"))?,
            index: r.index,
        });
    }
    MorseData::new(points)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ToricRecord {
    a: String,
    b: String,
}

/// `{"a": "p/q", "b": "p/q"}`
pub fn toric_from_json(text: &str) -> Result<ToricDomain> {
    let r: ToricRecord = json(text, "toric file")?;
    ToricDomain::new(
        action_at(&r.a, || "toric.a".into())?,
        action_at(&r.b, || "toric.b".into())?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn series_json_is_canonical() {
        let s = NovikovSeries::from_terms(
            [
                (Action::ratio(1, 2), int(2)),
                (Action::zero(), Rational::new((-1).into(), 3.into())),
            ],
            Action::integer(3),
        );
        let text = series_to_json(&s);
        assert_eq!(
            text,
            "{\n  \"cutoff\": \"3\",\n  \"terms\": [\n    {\n      \"exponent\": \"0\",\n      \"coefficient\": \"-1/3\"\n    },\n    {\n      \"exponent\": \"1/2\",\n      \"coefficient\": \"2\"\n    }\n  ]\n}\n"
        );
        assert_eq!(series_from_json(&text).unwrap(), s);
        assert_eq!(series_to_json(&series_from_json(&text).unwrap()), text);
    }

    #[test]
    fn series_json_rejects_noncanonical_order() {
        let unsorted = r#"{"cutoff": "3", "terms": [{"exponent": "2", "coefficient": "1"}, {"exponent": "1", "coefficient": "1"}]}"#;
        assert!(matches!(
            series_from_json(unsorted),
            Err(Error::Parse { .. })
        ));
        let zero = r#"{"cutoff": "3", "terms": [{"exponent": "1", "coefficient": "0"}]}"#;
        assert!(matches!(series_from_json(zero), Err(Error::Parse { .. })));
        let beyond = r#"{"cutoff": "3", "terms": [{"exponent": "4", "coefficient": "1"}]}"#;
        assert!(matches!(series_from_json(beyond), Err(Error::Parse { .. })));
    }

    #[test]
    fn report_round_trip() {
        let s = NovikovSeries::from_terms(
            [(Action::zero(), int(1)), (Action::ratio(3, 2), int(-1))],
            Action::integer(2),
        );
        let text = series_to_report(&s);
        assert_eq!(text, "0\t1\n3/2\t-1\ncutoff\t2\n");
        assert_eq!(read_series(&text).unwrap(), s);
        assert_eq!(read_series(&series_to_json(&s)).unwrap(), s);
        assert!(series_from_report("0\t1\n").is_err());
    }

    #[test]
    fn orbit_file_both_forms() {
        let text = r#"[
            {"label": "e", "action": "1", "type": "elliptic"},
            {"label": "g", "action": "3/2", "eps1": 1, "eps2": 0}
        ]"#;
        let set = orbit_set_from_json(text).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.orbits()[1].eps1, Parity::Odd);
        assert_eq!(set.orbits()[1].eps2, Parity::Even);
    }

    #[test]
    fn orbit_file_errors_have_locations() {
        let err = orbit_set_from_json(r#"[{"label": "e", "action": "x", "type": "elliptic"}]"#)
            .unwrap_err();
        assert!(err.to_string().contains("orbits[0].action"), "{err}");
        let err =
            orbit_set_from_json(r#"[{"label": "e", "action": "1", "type": "weird"}]"#).unwrap_err();
        assert!(err.to_string().contains("orbits[0].type"), "{err}");
        let err = orbit_set_from_json(r#"[{"label": "e", "action": "1"}]"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn complex_file() {
        let text = r#"{
            "generators": [{"label": "x", "eps": 1, "filtration": "2"}, {"label": "y", "eps": 0, "filtration": "1"}],
            "differential": [{"from": "x", "to": "y", "coeff": "1"}]
        }"#;
        let c = complex_from_json(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.entry(0, 1), &int(1));
    }

    #[test]
    fn morse_and_toric_files() {
        let m = morse_from_json(r#"[{"label": "min", "action": "1", "index": 0}, {"label": "max", "action": "3", "index": 2}]"#).unwrap();
        assert_eq!(m.points().len(), 2);
        let t = toric_from_json(r#"{"a": "1", "b": "3/2"}"#).unwrap();
        assert_eq!(t.b(), &Action::ratio(3, 2));
    }
}
