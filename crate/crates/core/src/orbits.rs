//! Nilpotent orbits and their weighted Dynkin diagrams.
//!
//! Classical orbits are partitions (with an I/II tag for very even orbits of
//! type D); exceptional orbits are read from the embedded tables, whose first
//! column lists every orbit's diagram.

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rootsys::{parse_compact, render_compact, CartanType, Family, Root, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts parts descending and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    pub fn transpose(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// All parts even, each with even multiplicity.
    pub fn is_very_even(&self) -> bool {
        !self.0.is_empty()
            && self
                .0
                .iter()
                .all(|&p| p % 2 == 0 && self.multiplicity(p).is_multiple_of(2))
    }

    pub fn is_admissible(&self, ty: CartanType) -> bool {
        let n = ty.rank() as u32;
        let parity_rule = |bad_parity: u32| {
            self.0
                .iter()
                .all(|&p| p % 2 != bad_parity || self.multiplicity(p).is_multiple_of(2))
        };
        match ty.family() {
            Family::A => self.size() == n + 1,
            Family::B => self.size() == 2 * n + 1 && parity_rule(0),
            Family::C => self.size() == 2 * n && parity_rule(1),
            Family::D => self.size() == 2 * n && parity_rule(0),
            _ => false,
        }
    }

    /// `{p-1, p-3, ..., 1-p}` over all parts, sorted descending.
    pub fn characteristic(&self) -> Vec<i32> {
        let mut h: Vec<i32> = self
            .0
            .iter()
            .flat_map(|&p| {
                let p = p as i32;
                (0..p).map(move |k| p - 1 - 2 * k)
            })
            .collect();
        h.sort_unstable_by(|a, b| b.cmp(a));
        h
    }
}

impl fmt::Display for Partition {
    /// Exponent form, descending: `3,2^2,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let m = self.0[i..].iter().take_while(|&&q| q == p).count();
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
            i += m;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Terms `k` or `k^m`, comma separated. Parentheses and braces are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | '{' | '}' | ' '))
            .collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        let bad = |t: &str| Error::Parse(format!("bad partition term {t:?} in {s:?}"));
        let mut parts = Vec::new();
        for term in cleaned.split(',') {
            let (k, m) = match term.split_once('^') {
                Some((k, m)) => (k, m.parse::<usize>().map_err(|_| bad(term))?),
                None => (term, 1),
            };
            let k = k.parse::<u32>().map_err(|_| bad(term))?;
            if k == 0 || m == 0 {
                return Err(bad(term));
            }
            parts.extend(std::iter::repeat_n(k, m));
        }
        Ok(Partition::new(parts))
    }
}

/// Distinguishes the two orbits sharing a very even partition in type D.
/// Tag I puts `h_{n-1} - h_n` on Bourbaki node n-1; tag II swaps the fork.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    I,
    II,
}

impl Tag {
    pub fn name(self) -> &'static str {
        match self {
            Tag::I => "I",
            Tag::II => "II",
        }
    }

    fn subscript(self) -> &'static str {
        match self {
            Tag::I => "_1",
            Tag::II => "_2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrbitLabel {
    Classical {
        partition: Partition,
        tag: Option<Tag>,
    },
    /// Position in the embedded exceptional table.
    Exceptional {
        index: usize,
        diagram: WeightedDynkinDiagram,
    },
}

impl OrbitLabel {
    pub fn classical(partition: Partition, tag: Option<Tag>) -> Self {
        OrbitLabel::Classical { partition, tag }
    }

    pub fn tag(&self) -> Option<Tag> {
        match self {
            OrbitLabel::Classical { tag, .. } => *tag,
            OrbitLabel::Exceptional { .. } => None,
        }
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            OrbitLabel::Classical { partition, .. } => Some(partition),
            OrbitLabel::Exceptional { .. } => None,
        }
    }

    /// Label without the tag suffix; the exceptional label is the diagram.
    pub fn base_name(&self) -> String {
        match self {
            OrbitLabel::Classical { partition, .. } => partition.to_string(),
            OrbitLabel::Exceptional { diagram, .. } => diagram.to_string(),
        }
    }

    /// Parses the partition grammar with an optional `_1`/`_2` suffix.
    pub fn parse_classical(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, tag) = if let Some(b) = s.strip_suffix("_1") {
            (b, Some(Tag::I))
        } else if let Some(b) = s.strip_suffix("_2") {
            (b, Some(Tag::II))
        } else {
            (s, None)
        };
        Ok(OrbitLabel::Classical {
            partition: body.parse()?,
            tag,
        })
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Classical { partition, tag } => {
                write!(f, "{partition}")?;
                if let Some(t) = tag {
                    f.write_str(t.subscript())?;
                }
                Ok(())
            }
            OrbitLabel::Exceptional { diagram, .. } => write!(f, "{diagram}"),
        }
    }
}

/// Labels `alpha_i(h_0)` on the nodes, each in {0,1,2}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedDynkinDiagram(SmallVec<[u8; 8]>);

impl WeightedDynkinDiagram {
    pub fn new(labels: &[u8]) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l > 2) {
            return Err(Error::InvalidLabel(bad.into()));
        }
        Ok(Self(SmallVec::from_slice(labels)))
    }

    pub fn zero(rank: usize) -> Self {
        Self(SmallVec::from_elem(0, rank))
    }

    pub fn principal(rank: usize) -> Self {
        Self(SmallVec::from_elem(2, rank))
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|&l| l % 2 == 0)
    }

    /// Nodes labelled 0; they span the Levi of the Jacobson–Morozov parabolic.
    pub fn zero_nodes(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.0[i] == 0).collect()
    }

    /// `alpha(h) = sum m_i * label_i`.
    pub fn pairing(&self, r: &Root) -> Result<i32> {
        if r.coords().len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: r.coords().len(),
            });
        }
        Ok(r.coords()
            .iter()
            .zip(&self.0)
            .map(|(&m, &l)| m * i32::from(l))
            .sum())
    }

    /// The diagram read as a weight: node labels become fundamental-weight coordinates.
    pub fn as_weight(&self) -> Weight {
        let c: Vec<i32> = self.0.iter().map(|&l| i32::from(l)).collect();
        Weight::new(&c)
    }

    /// Inverse of [`as_weight`](Self::as_weight) for weights with coordinates in {0,1,2}.
    pub fn from_weight(w: &Weight) -> Result<Self> {
        let labels = w
            .coords()
            .iter()
            .map(|&c| u8::try_from(c).map_err(|_| Error::InvalidLabel(c.into())))
            .collect::<Result<Vec<u8>>>()?;
        Self::new(&labels)
    }
}

impl fmt::Display for WeightedDynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<i32> = self.0.iter().map(|&l| i32::from(l)).collect();
        f.write_str(&render_compact(&c))
    }
}

impl FromStr for WeightedDynkinDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = parse_compact(s)?
            .into_iter()
            .map(|x| u8::try_from(x).map_err(|_| Error::InvalidLabel(x)))
            .collect::<Result<Vec<u8>>>()?;
        Self::new(&labels)
    }
}

pub fn is_even(h: &WeightedDynkinDiagram) -> bool {
    h.is_even()
}

pub fn transpose_partition(p: &Partition) -> Partition {
    p.transpose()
}

/// Partitions of `n` in descending lexicographic order (a linear extension
/// of the dominance order, largest first).
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Classical orbits in deterministic order; very even D-orbits appear as I then II.
pub fn enumerate_orbits(ty: CartanType) -> Result<Vec<OrbitLabel>> {
    let n = ty.rank() as u32;
    let size = match ty.family() {
        Family::A => n + 1,
        Family::B => 2 * n + 1,
        Family::C | Family::D => 2 * n,
        _ => return Err(Error::UnsupportedType(ty)),
    };
    let mut out = Vec::new();
    for p in partitions(size) {
        if !p.is_admissible(ty) {
            continue;
        }
        if ty.family() == Family::D && p.is_very_even() {
            out.push(OrbitLabel::classical(p.clone(), Some(Tag::I)));
            out.push(OrbitLabel::classical(p, Some(Tag::II)));
        } else {
            out.push(OrbitLabel::classical(p, None));
        }
    }
    Ok(out)
}

/// Weighted Dynkin diagram of a classical orbit.
pub fn diagram_from_partition(
    p: &Partition,
    tag: Option<Tag>,
    ty: CartanType,
) -> Result<WeightedDynkinDiagram> {
    let inadmissible = || Error::InadmissiblePartition {
        partition: p.to_string(),
        ty,
    };
    if !p.is_admissible(ty) {
        return Err(inadmissible());
    }
    let very_even = ty.family() == Family::D && p.is_very_even();
    if very_even != tag.is_some() {
        return Err(inadmissible());
    }
    let h = p.characteristic();
    let n = ty.rank();
    let diff = |i: usize| h[i] - h[i + 1];
    let mut labels: Vec<i32> = match ty.family() {
        Family::A => (0..n).map(diff).collect(),
        Family::B => {
            let mut l: Vec<i32> = (0..n - 1).map(diff).collect();
            l.push(h[n - 1]);
            l
        }
        Family::C => {
            let mut l: Vec<i32> = (0..n - 1).map(diff).collect();
            l.push(2 * h[n - 1]);
            l
        }
        Family::D => {
            let mut l: Vec<i32> = (0..n - 1).map(diff).collect();
            l.push(h[n - 2] + h[n - 1]);
            l
        }
        _ => return Err(Error::UnsupportedType(ty)),
    };
    if tag == Some(Tag::II) {
        labels.swap(n - 2, n - 1);
    }
    let labels = labels
        .into_iter()
        .map(|x| u8::try_from(x).map_err(|_| Error::InvalidLabel(x.into())))
        .collect::<Result<Vec<u8>>>()?;
    WeightedDynkinDiagram::new(&labels)
}

pub fn diagram_of(label: &OrbitLabel, ty: CartanType) -> Result<WeightedDynkinDiagram> {
    match label {
        OrbitLabel::Classical { partition, tag } => diagram_from_partition(partition, *tag, ty),
        OrbitLabel::Exceptional { diagram, .. } => Ok(diagram.clone()),
    }
}

/// Diagrams of all orbits of an exceptional type, in table order.
pub fn exceptional_orbit_diagrams(ty: CartanType) -> Result<Vec<WeightedDynkinDiagram>> {
    if ty.family().is_classical() {
        return Err(Error::UnsupportedType(ty));
    }
    Ok(crate::tables::load_fixtures(ty)?
        .into_iter()
        .map(|row| row.diagram)
        .collect())
}

/// Every orbit of the type: partitions for classical types, table diagrams otherwise.
pub fn all_orbits(ty: CartanType) -> Result<Vec<(OrbitLabel, WeightedDynkinDiagram)>> {
    if ty.family().is_classical() {
        enumerate_orbits(ty)?
            .into_iter()
            .map(|o| {
                let d = diagram_of(&o, ty)?;
                Ok((o, d))
            })
            .collect()
    } else {
        Ok(exceptional_orbit_diagrams(ty)?
            .into_iter()
            .enumerate()
            .map(|(index, diagram)| {
                (
                    OrbitLabel::Exceptional {
                        index,
                        diagram: diagram.clone(),
                    },
                    diagram,
                )
            })
            .collect())
    }
}
