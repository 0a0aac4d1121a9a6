//! Embedded reference tables of L(O) and verification against them.
//!
//! One file per simple type, one row per orbit:
//! `orbit|diagram|weight|norm_sq`. Exceptional orbits are written
//! `diag:<labels>`. A `-` cell is blank, a trailing `?` on the weight marks
//! a predicted value, and `#` starts a comment.

use std::fmt;

use crate::error::{Error, Result};
use crate::lmap::TableEntry;
use crate::orbits::{diagram_from_partition, OrbitLabel, Tag, WeightedDynkinDiagram};
use crate::rootsys::{parse_compact, CartanType, Family, Rational, RootSystem, Weight};

const SOURCES: &[(&str, &str)] = &[
    ("so5", include_str!("../fixtures/so5.tbl")),
    ("so7", include_str!("../fixtures/so7.tbl")),
    ("so9", include_str!("../fixtures/so9.tbl")),
    ("so11", include_str!("../fixtures/so11.tbl")),
    ("so13", include_str!("../fixtures/so13.tbl")),
    ("so15", include_str!("../fixtures/so15.tbl")),
    ("sp4", include_str!("../fixtures/sp4.tbl")),
    ("sp6", include_str!("../fixtures/sp6.tbl")),
    ("sp8", include_str!("../fixtures/sp8.tbl")),
    ("sp10", include_str!("../fixtures/sp10.tbl")),
    ("sp12", include_str!("../fixtures/sp12.tbl")),
    ("sp14", include_str!("../fixtures/sp14.tbl")),
    ("so6", include_str!("../fixtures/so6.tbl")),
    ("so8", include_str!("../fixtures/so8.tbl")),
    ("so10", include_str!("../fixtures/so10.tbl")),
    ("so12", include_str!("../fixtures/so12.tbl")),
    ("so14", include_str!("../fixtures/so14.tbl")),
    ("so16", include_str!("../fixtures/so16.tbl")),
    ("G2", include_str!("../fixtures/G2.tbl")),
    ("F4", include_str!("../fixtures/F4.tbl")),
    ("E6", include_str!("../fixtures/E6.tbl")),
    ("E7", include_str!("../fixtures/E7.tbl")),
    ("E8", include_str!("../fixtures/E8.tbl")),
];

/// Conventional name of the table for `ty`: `so5` for B2, `sp6` for C3, `E7`.
pub fn table_name(ty: CartanType) -> String {
    let n = ty.rank();
    match ty.family() {
        Family::A => format!("sl{}", n + 1),
        Family::B => format!("so{}", 2 * n + 1),
        Family::C => format!("sp{}", 2 * n),
        Family::D => format!("so{}", 2 * n),
        _ => ty.to_string(),
    }
}

/// Every type with an embedded table, in embedding order.
pub fn tabulated_types() -> Vec<CartanType> {
    SOURCES
        .iter()
        .map(|(name, _)| parse_table_name(name).expect("embedded table name"))
        .collect()
}

fn parse_table_name(name: &str) -> Result<CartanType> {
    let bad = || Error::Parse(format!("unknown table {name:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some(m) = name.strip_prefix("so") {
        let m = num(m)?;
        if m % 2 == 1 {
            CartanType::new(Family::B, m / 2)
        } else {
            CartanType::new(Family::D, m / 2)
        }
    } else if let Some(m) = name.strip_prefix("sp") {
        let m = num(m)?;
        if m % 2 == 1 {
            return Err(bad());
        }
        CartanType::new(Family::C, m / 2)
    } else if let Some(m) = name.strip_prefix("sl") {
        CartanType::new(Family::A, num(m)?.checked_sub(1).ok_or_else(bad)?)
    } else {
        name.parse()
    }
}

/// Accepts both table names (`so8`, `sp6`) and type names (`D4`, `C3`).
pub fn parse_group(name: &str) -> Result<CartanType> {
    name.parse().or_else(|_| parse_table_name(name))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowFlag {
    Confirmed,
    /// The weight is a prediction rather than a computed value.
    QuestionMark,
    /// No weight was recorded.
    Blank,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureRow {
    pub orbit: OrbitLabel,
    pub diagram: WeightedDynkinDiagram,
    pub weight: Option<Weight>,
    pub norm_sq: Option<i64>,
    pub flag: RowFlag,
    /// Subscript as printed; `orbit` carries the tag bound by diagram.
    pub printed_tag: Option<Tag>,
    /// 1-based line in the source file.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureTable {
    pub name: String,
    pub ty: CartanType,
    pub rows: Vec<FixtureRow>,
    /// `node_order[k]` is the Bourbaki node of printed position `k`.
    pub node_order: Vec<usize>,
    pub comments: Vec<String>,
}

impl FixtureTable {
    pub fn row_for(&self, diagram: &WeightedDynkinDiagram) -> Option<&FixtureRow> {
        self.rows.iter().find(|r| &r.diagram == diagram)
    }
}

pub fn fixture_source(ty: CartanType) -> Result<&'static str> {
    let name = table_name(ty);
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| *src)
        .ok_or(Error::UnknownTable(ty))
}

struct RawRow {
    orbit: String,
    diagram: Vec<u8>,
    weight: Option<Vec<i64>>,
    norm_sq: Option<i64>,
    flag: RowFlag,
    line: usize,
}

fn parse_raw(name: &str, rank: usize, src: &str) -> Result<(Vec<RawRow>, Vec<String>)> {
    let err = |line: usize, message: String| Error::Fixture {
        table: name.to_string(),
        message: format!("line {line}: {message}"),
    };
    let mut rows = Vec::new();
    let mut comments = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if let Some(c) = text.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        if text.is_empty() {
            continue;
        }
        let cells: Vec<&str> = text.split('|').map(str::trim).collect();
        if cells.len() != 4 {
            return Err(err(line, format!("expected 4 cells, found {}", cells.len())));
        }
        let diagram: Vec<u8> = parse_compact(cells[1])
            .map_err(|e| err(line, e.to_string()))?
            .into_iter()
            .map(|x| u8::try_from(x).map_err(|_| err(line, format!("label {x}"))))
            .collect::<Result<_>>()?;
        if diagram.len() != rank {
            return Err(err(line, format!("diagram {} has wrong rank", cells[1])));
        }
        let (weight, flag) = match cells[2] {
            "-" => (None, RowFlag::Blank),
            w => {
                let (body, flag) = match w.strip_suffix('?') {
                    Some(b) => (b, RowFlag::QuestionMark),
                    None => (w, RowFlag::Confirmed),
                };
                let coords = parse_compact(body).map_err(|e| err(line, e.to_string()))?;
                if coords.len() != rank {
                    return Err(err(line, format!("weight {w} has wrong rank")));
                }
                (Some(coords), flag)
            }
        };
        let norm_sq = match cells[3] {
            "-" => None,
            s => Some(
                s.parse::<i64>()
                    .map_err(|_| err(line, format!("bad norm {s:?}")))?,
            ),
        };
        rows.push(RawRow {
            orbit: cells[0].to_string(),
            diagram,
            weight,
            norm_sq,
            flag,
            line,
        });
    }
    Ok((rows, comments))
}

/// Candidate readings of the printed node order; identity first.
fn candidate_orders(ty: CartanType) -> Vec<Vec<usize>> {
    let n = ty.rank();
    let identity: Vec<usize> = (0..n).collect();
    let mut out = vec![identity.clone()];
    match ty.family() {
        Family::D => {
            let mut o = identity;
            o.swap(n - 2, n - 1);
            out.push(o);
        }
        Family::E => {
            // 1 3 4 5 6 .. 2
            let mut o = vec![0];
            o.extend(2..n);
            o.push(1);
            out.push(o);
        }
        _ => out.push(identity.into_iter().rev().collect()),
    }
    out
}

fn permute(order: &[usize], printed: &[i64]) -> Vec<i64> {
    let mut out = vec![0; printed.len()];
    for (k, &node) in order.iter().enumerate() {
        out[node] = printed[k];
    }
    out
}

/// Rows whose printed norm matches the printed weight under `order`.
fn consistent_rows(rs: &RootSystem, raw: &[RawRow], order: &[usize]) -> usize {
    raw.iter()
        .filter(|r| match (&r.weight, r.norm_sq) {
            (Some(w), Some(n)) => {
                let w = permute(order, w);
                let w = Weight::new(&w.iter().map(|&x| x as i32).collect::<Vec<_>>());
                rs.norm_sq(&w) == Rational::from_integer(n)
            }
            _ => false,
        })
        .count()
}

fn bind_orbit(name: &str, ty: CartanType, raw: &RawRow, diagram: &WeightedDynkinDiagram) -> Result<(OrbitLabel, Option<Tag>)> {
    if let Some(d) = raw.orbit.strip_prefix("diag:") {
        if ty.family().is_classical() {
            return Err(Error::Fixture {
                table: name.to_string(),
                message: format!("line {}: diagram label in a classical table", raw.line),
            });
        }
        let printed: WeightedDynkinDiagram = d.parse()?;
        if printed.labels().len() != ty.rank() {
            return Err(Error::RankMismatch {
                expected: ty.rank(),
                got: printed.rank(),
            });
        }
        return Ok((
            OrbitLabel::Exceptional {
                index: 0,
                diagram: diagram.clone(),
            },
            None,
        ));
    }
    let label = OrbitLabel::parse_classical(&raw.orbit)?;
    let printed_tag = label.tag();
    let partition = label.partition().expect("classical label").clone();
    if ty.family() == Family::D && partition.is_very_even() {
        for tag in [Tag::I, Tag::II] {
            if diagram_from_partition(&partition, Some(tag), ty).as_ref() == Ok(diagram) {
                return Ok((OrbitLabel::classical(partition, Some(tag)), printed_tag));
            }
        }
    }
    Ok((label, printed_tag))
}

/// Parses a table; the node order is the candidate under which the most
/// printed norms match their printed weights, identity on ties.
pub fn parse_fixture(name: &str, ty: CartanType, src: &str) -> Result<FixtureTable> {
    let (raw, comments) = parse_raw(name, ty.rank(), src)?;
    let rs = RootSystem::new(ty);
    let checkable = raw
        .iter()
        .filter(|r| r.weight.is_some() && r.norm_sq.is_some())
        .count();
    let mut node_order = Vec::new();
    let mut best = 0;
    for order in candidate_orders(ty) {
        let score = consistent_rows(&rs, &raw, &order);
        if score > best || node_order.is_empty() {
            best = score;
            node_order = order;
        }
    }
    if 2 * best < checkable || (checkable > 0 && best == 0) {
        return Err(Error::Fixture {
            table: name.to_string(),
            message: "no node order makes the printed norms consistent".into(),
        });
    }
    let mut rows = Vec::with_capacity(raw.len());
    for (index, r) in raw.iter().enumerate() {
        let labels: Vec<u8> = permute(&node_order, &r.diagram.iter().map(|&x| i64::from(x)).collect::<Vec<_>>())
            .into_iter()
            .map(|x| x as u8)
            .collect();
        let diagram = WeightedDynkinDiagram::new(&labels)?;
        let (mut orbit, printed_tag) = bind_orbit(name, ty, r, &diagram)?;
        if let OrbitLabel::Exceptional { index: i, .. } = &mut orbit {
            *i = index;
        }
        let weight = r.weight.as_ref().map(|w| {
            Weight::new(&permute(&node_order, w).iter().map(|&x| x as i32).collect::<Vec<_>>())
        });
        rows.push(FixtureRow {
            orbit,
            diagram,
            weight,
            norm_sq: r.norm_sq,
            flag: r.flag,
            printed_tag,
            line: r.line,
        });
    }
    Ok(FixtureTable {
        name: name.to_string(),
        ty,
        rows,
        node_order,
        comments,
    })
}

pub fn load_table(ty: CartanType) -> Result<FixtureTable> {
    parse_fixture(&table_name(ty), ty, fixture_source(ty)?)
}

pub fn load_fixtures(ty: CartanType) -> Result<Vec<FixtureRow>> {
    Ok(load_table(ty)?.rows)
}

/// A row that disagrees with itself or with the orbit classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistency {
    pub line: usize,
    pub orbit: String,
    pub message: String,
}

impl fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {} ({}): {}", self.line, self.orbit, self.message)
    }
}

/// Internal checks that need no L-map computation: norms agree with weights,
/// classical diagrams follow from partitions, and diagrams are distinct.
pub fn self_consistency(table: &FixtureTable) -> Vec<Inconsistency> {
    let rs = RootSystem::new(table.ty);
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for row in &table.rows {
        let mut flag = |message: String| {
            out.push(Inconsistency {
                line: row.line,
                orbit: row.orbit.to_string(),
                message,
            })
        };
        if !seen.insert(row.diagram.clone()) {
            flag(format!("diagram {} repeated", row.diagram));
        }
        if let (Some(w), Some(n)) = (&row.weight, row.norm_sq) {
            let computed = rs.norm_sq(w);
            if computed != Rational::from_integer(n) {
                flag(format!("norm of {} is {computed}, printed {n}", w.compact()));
            }
        }
        if row.weight.is_some() != row.norm_sq.is_some() {
            flag("weight and norm must be both present or both blank".into());
        }
        if let Some(w) = &row.weight {
            if !w.is_dominant() {
                flag(format!("weight {} is not dominant", w.compact()));
            }
        }
        if let OrbitLabel::Classical { partition, tag } = &row.orbit {
            match diagram_from_partition(partition, *tag, table.ty) {
                Ok(d) if d == row.diagram => {}
                Ok(d) => flag(format!("partition gives {d}, printed {}", row.diagram)),
                Err(e) => flag(e.to_string()),
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    Mismatch {
        computed: Weight,
        computed_norm: Rational,
    },
    /// The fixture cell was blank.
    GapFilled {
        computed: Weight,
        computed_norm: Rational,
    },
    /// The fixture value was a prediction.
    QuestionResolved {
        computed: Weight,
        computed_norm: Rational,
        agree: bool,
    },
    Skipped {
        reason: String,
    },
}

impl RowStatus {
    pub fn name(&self) -> &'static str {
        match self {
            RowStatus::Match => "match",
            RowStatus::Mismatch { .. } => "mismatch",
            RowStatus::GapFilled { .. } => "gap_filled",
            RowStatus::QuestionResolved { .. } => "question_resolved",
            RowStatus::Skipped { .. } => "skipped",
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, RowStatus::Mismatch { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReport {
    pub orbit: OrbitLabel,
    pub diagram: WeightedDynkinDiagram,
    pub fixture_weight: Option<Weight>,
    pub fixture_norm: Option<i64>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub gaps_filled: usize,
    pub questions_agreed: usize,
    pub questions_disagreed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn completed(&self) -> usize {
        self.total - self.skipped
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub ty: CartanType,
    pub rows: Vec<RowReport>,
    pub summary: Summary,
}

/// Compares computed entries with fixture rows, matching them by diagram.
/// Rows come out in fixture order.
pub fn verify(ty: CartanType, results: &[TableEntry], fixtures: &[FixtureRow]) -> VerificationReport {
    let mut rows = Vec::with_capacity(fixtures.len());
    let mut s = Summary::default();
    for f in fixtures {
        let entry = results.iter().find(|e| e.diagram == f.diagram);
        let status = match entry.map(|e| &e.outcome) {
            None => RowStatus::Skipped {
                reason: "not computed".into(),
            },
            Some(Err(e)) => RowStatus::Skipped {
                reason: e.to_string(),
            },
            Some(Ok(r)) => {
                let computed = r.weight.clone();
                let computed_norm = r.norm_sq;
                match f.flag {
                    RowFlag::Blank => RowStatus::GapFilled {
                        computed,
                        computed_norm,
                    },
                    RowFlag::QuestionMark => RowStatus::QuestionResolved {
                        agree: f.weight.as_ref() == Some(&computed),
                        computed,
                        computed_norm,
                    },
                    RowFlag::Confirmed => {
                        let norm_ok = f.norm_sq.map(Rational::from_integer) == Some(computed_norm);
                        if f.weight.as_ref() == Some(&computed) && norm_ok {
                            RowStatus::Match
                        } else {
                            RowStatus::Mismatch {
                                computed,
                                computed_norm,
                            }
                        }
                    }
                }
            }
        };
        s.total += 1;
        match &status {
            RowStatus::Match => s.matched += 1,
            RowStatus::Mismatch { .. } => s.mismatched += 1,
            RowStatus::GapFilled { .. } => s.gaps_filled += 1,
            RowStatus::QuestionResolved { agree: true, .. } => s.questions_agreed += 1,
            RowStatus::QuestionResolved { agree: false, .. } => s.questions_disagreed += 1,
            RowStatus::Skipped { .. } => s.skipped += 1,
        }
        rows.push(RowReport {
            orbit: f.orbit.clone(),
            diagram: f.diagram.clone(),
            fixture_weight: f.weight.clone(),
            fixture_norm: f.norm_sq,
            status,
        });
    }
    VerificationReport {
        ty,
        rows,
        summary: s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn names_round_trip() {
        for t in tabulated_types() {
            assert_eq!(parse_group(&table_name(t)).unwrap(), t);
            assert_eq!(parse_group(&t.to_string()).unwrap(), t);
        }
        assert_eq!(table_name(ty("B2")), "so5");
        assert_eq!(table_name(ty("C3")), "sp6");
        assert_eq!(table_name(ty("D4")), "so8");
        assert_eq!(tabulated_types().len(), 23);
        assert!(matches!(load_table(ty("A3")), Err(Error::UnknownTable(_))));
        assert!(parse_group("sp7").is_err());
    }

    #[test]
    fn so5_rows() {
        let t = load_table(ty("B2")).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.node_order, vec![0, 1]);
        let last = t.rows.last().unwrap();
        assert_eq!(last.orbit.to_string(), "1^5");
        assert_eq!(last.weight, Some(Weight::new(&[2, 2])));
        assert_eq!(last.norm_sq, Some(20));
    }

    #[test]
    fn so12_question_mark() {
        let t = load_table(ty("D6")).unwrap();
        assert_eq!(t.rows.len(), 31);
        let q: Vec<_> = t.rows.iter().filter(|r| r.flag == RowFlag::QuestionMark).collect();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].orbit.to_string(), "2^2,1^8");
    }

    #[test]
    fn blank_rows_have_no_values() {
        let t = load_table(ty("E8")).unwrap();
        assert_eq!(t.rows.len(), 70);
        let blanks: Vec<_> = t.rows.iter().filter(|r| r.flag == RowFlag::Blank).collect();
        assert!(!blanks.is_empty());
        assert!(blanks.iter().all(|r| r.weight.is_none() && r.norm_sq.is_none()));
    }

    #[test]
    fn very_even_tags_bind_by_diagram() {
        let t = load_table(ty("D4")).unwrap();
        for r in &t.rows {
            if let OrbitLabel::Classical { partition, tag } = &r.orbit {
                assert_eq!(diagram_from_partition(partition, *tag, t.ty).unwrap(), r.diagram);
            }
        }
    }

    #[test]
    fn parse_errors() {
        let b2 = ty("B2");
        assert!(parse_fixture("x", b2, "5|22|00|0|9").is_err());
        assert!(parse_fixture("x", b2, "5|222|00|0").is_err());
        assert!(parse_fixture("x", b2, "5|22|0|0").is_err());
        assert!(parse_fixture("x", b2, "5|22|00|zero").is_err());
        // norm inconsistent under every order
        assert!(parse_fixture("x", b2, "5|22|11|3").is_err());
        let t = parse_fixture("x", b2, "# c\n\n5|22|00|0\n1^5|00|-|-\n").unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.comments, vec!["c"]);
        assert_eq!(t.rows[1].flag, RowFlag::Blank);
        assert_eq!(t.rows[1].line, 4);
    }

    #[test]
    fn reversed_order_is_detected() {
        // G2 printed with the long node first
        let g2 = ty("G2");
        let t = parse_fixture("x", g2, "diag:10|10|03|18\n").unwrap();
        assert_eq!(t.node_order, vec![1, 0]);
        assert_eq!(t.rows[0].diagram.to_string(), "01");
        assert_eq!(t.rows[0].weight, Some(Weight::new(&[3, 0])));
    }

    #[test]
    fn self_consistency_flags_typos() {
        let b2 = ty("B2");
        let t = parse_fixture("x", b2, "5|20|00|0\n3,1^2|20|10|2\n").unwrap();
        let issues = self_consistency(&t);
        assert_eq!(issues.len(), 2);
        assert!(issues[0].message.contains("partition gives 22"));
        assert!(issues[1].message.contains("repeated"));
    }
}
