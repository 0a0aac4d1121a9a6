//! Root systems of types A–G with exact lattice arithmetic.
//!
//! Weights are integer vectors in the fundamental-weight basis; roots are
//! integer vectors in the simple-root basis. Nodes follow Bourbaki numbering
//! (0-based here). The invariant form is normalized so that short roots have
//! squared length 2.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Inline storage covers every exceptional type and classical types up to rank 8.
pub(crate) type Coords = SmallVec<[i32; 8]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Langlands dual type. Bourbaki numbering makes the node bijection the identity.
    pub fn dual(self) -> Self {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        Self { family, ..self }
    }

    /// Node of the dual type carrying the coroot of node `i`. Bourbaki order
    /// puts long roots first in F4 and G2, so there the order reverses.
    pub fn dual_node(self, i: usize) -> usize {
        match self.family {
            Family::F | Family::G => self.rank - 1 - i,
            _ => i,
        }
    }

    /// Dimension of the simple Lie algebra.
    pub fn dimension(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
            Family::E => match n {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            Family::F => 52,
            Family::G => 14,
        }
    }

    pub fn num_positive_roots(self) -> usize {
        (self.dimension() - self.rank) / 2
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family: Family = chars
            .next()
            .ok_or_else(|| Error::Parse("empty type".into()))?
            .to_string()
            .parse()?;
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// Integer vector in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub(crate) Coords);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(SmallVec::from_elem(0, rank))
    }

    pub fn new(coords: &[i32]) -> Self {
        Weight(SmallVec::from_slice(coords))
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_divisible_by(&self, k: i32) -> bool {
        self.0.iter().all(|&c| c % k == 0)
    }

    /// Compact rendering: a digit string when every coordinate is a single
    /// non-negative digit, otherwise a comma-separated list.
    pub fn compact(&self) -> String {
        render_compact(&self.0)
    }
}

pub(crate) fn render_compact(coords: &[i32]) -> String {
    if coords.iter().all(|c| (0..=9).contains(c)) {
        coords.iter().map(|c| char::from(b'0' + *c as u8)).collect()
    } else {
        coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Accepts `"1,0,-2"` or a compact digit string `"102"`.
pub(crate) fn parse_compact(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
            })
            .collect()
    } else if s.chars().all(|c| c.is_ascii_digit()) {
        Ok(s.bytes().map(|b| i64::from(b - b'0')).collect())
    } else if let Ok(v) = s.parse::<i64>() {
        Ok(vec![v])
    } else {
        Err(Error::Parse(format!("bad vector {s:?}")))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = parse_compact(s)?;
        let coords = v
            .into_iter()
            .map(|x| i32::try_from(x).map_err(|_| Error::Parse(format!("{x} out of range"))))
            .collect::<Result<Coords>>()?;
        Ok(Weight(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// A root written in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub(crate) Coords);

impl Root {
    pub fn new(coords: &[i32]) -> Self {
        Root(SmallVec::from_slice(coords))
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = SmallVec::from_elem(0, rank);
        c[i] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, _)| i)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_compact(&self.0))
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: CartanType,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`; column j is `alpha_j` as a weight.
    cartan: Vec<Vec<i32>>,
    inv_cartan: Vec<Vec<Rational>>,
    symmetrizers: Vec<Rational>,
    positive_roots: Vec<Root>,
    root_weights: Vec<Weight>,
    gram_fundamental: Vec<Vec<Rational>>,
    // Integer forms used on hot paths.
    det: i64,
    adj: Vec<Vec<i64>>,
    gram_den: i64,
    gram_int: Vec<Vec<i64>>,
    columns: Vec<Coords>,
}

fn cartan_matrix(ty: CartanType) -> Vec<Vec<i32>> {
    let n = ty.rank();
    let mut a = vec![vec![0i32; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match ty.family() {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    match ty.family() {
        // alpha_n short
        Family::B => a[n - 1][n - 2] = -2,
        // alpha_n long
        Family::C => a[n - 2][n - 1] = -2,
        // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        Family::F => a[2][1] = -2,
        // alpha_1 short
        Family::G => a[0][1] = -3,
        _ => {}
    }
    a
}

fn invert(m: &[Vec<i32>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(i64::from(i == j)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != Rational::from_integer(0))
            .expect("Cartan matrices are nonsingular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != Rational::from_integer(0) {
                    for j in 0..n {
                        let (x, y) = (a[col][j], inv[col][j]);
                        a[r][j] -= f * x;
                        inv[r][j] -= f * y;
                    }
                }
            }
        }
    }
    inv
}

fn symmetrizers(a: &[Vec<i32>]) -> Vec<Rational> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    d[0] = Some(Rational::from_integer(1));
    // Dynkin diagrams are connected trees; propagate d_j = d_i a_ij / a_ji.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            let Some(di) = d[i] else { continue };
            for j in 0..n {
                if i != j && a[i][j] != 0 && d[j].is_none() {
                    d[j] = Some(di * Rational::from_integer(a[i][j].into()) / i64::from(a[j][i]));
                    changed = true;
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("connected")).collect();
    let min = *d.iter().min().expect("rank >= 1");
    d.into_iter().map(|x| x / min).collect()
}

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl RootSystem {
    pub fn new(ty: CartanType) -> Self {
        let cartan = cartan_matrix(ty);
        let n = ty.rank();
        let inv_cartan = invert(&cartan);
        let symmetrizers = symmetrizers(&cartan);
        let gram_fundamental: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| symmetrizers[j] * inv_cartan[j][i]).collect())
            .collect();

        let det_den = inv_cartan
            .iter()
            .flatten()
            .fold(1i64, |acc, x| lcm(acc, *x.denom()));
        let adj = inv_cartan
            .iter()
            .map(|row| row.iter().map(|x| (*x * det_den).to_integer()).collect())
            .collect();
        let gram_den = gram_fundamental
            .iter()
            .flatten()
            .fold(1i64, |acc, x| lcm(acc, *x.denom()));
        let gram_int = gram_fundamental
            .iter()
            .map(|row| row.iter().map(|x| (*x * gram_den).to_integer()).collect())
            .collect();
        let columns = (0..n)
            .map(|j| (0..n).map(|i| cartan[i][j]).collect())
            .collect();

        let mut rs = RootSystem {
            ty,
            cartan,
            inv_cartan,
            symmetrizers,
            positive_roots: Vec::new(),
            root_weights: Vec::new(),
            gram_fundamental,
            det: det_den,
            adj,
            gram_den,
            gram_int,
            columns,
        };
        rs.positive_roots = rs.generate_positive_roots();
        rs.root_weights = rs
            .positive_roots
            .iter()
            .map(|r| rs.root_as_weight(r))
            .collect();
        rs
    }

    /// Height-layered closure from the simple roots. `beta + alpha_i` is a
    /// root iff the alpha_i-string through beta extends upward, i.e.
    /// `p - <beta, alpha_i^vee> > 0` where p is how far the string reaches down.
    fn generate_positive_roots(&self) -> Vec<Root> {
        let n = self.rank();
        let mut found: HashSet<Coords> = HashSet::new();
        let mut layer: Vec<Coords> = (0..n).map(|i| Root::simple(n, i).0).collect();
        found.extend(layer.iter().cloned());
        let mut all = layer.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if found.contains(&up) {
                        continue;
                    }
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if down[i] < 0 || !found.contains(&down) {
                            break;
                        }
                        p += 1;
                    }
                    let pairing: i32 = (0..n).map(|j| self.cartan[i][j] * beta[j]).sum();
                    if p - pairing > 0 {
                        found.insert(up.clone());
                        next.push(up);
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        let mut roots: Vec<Root> = all.into_iter().map(Root).collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.0.cmp(&b.0)));
        roots
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn inv_cartan(&self) -> &[Vec<Rational>] {
        &self.inv_cartan
    }

    pub fn symmetrizers(&self) -> &[Rational] {
        &self.symmetrizers
    }

    pub fn gram_fundamental(&self) -> &[Vec<Rational>] {
        &self.gram_fundamental
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Positive roots as weights, index-aligned with [`positive_roots`](Self::positive_roots).
    pub fn positive_root_weights(&self) -> &[Weight] {
        &self.root_weights
    }

    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight(self.columns[i].clone())
    }

    pub fn root_as_weight(&self, r: &Root) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| self.cartan[i][j] * r.0[j]).sum())
                .collect(),
        )
    }

    /// Applies the simple reflection `s_i` in place.
    #[inline]
    pub(crate) fn reflect_in_place(&self, w: &mut [i32], i: usize) {
        let k = w[i];
        if k != 0 {
            for (x, a) in w.iter_mut().zip(&self.columns[i]) {
                *x -= k * a;
            }
        }
    }

    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let mut out = w.clone();
        self.reflect_in_place(&mut out.0, i);
        out
    }

    /// Reflects until every coordinate is non-negative; returns the number of
    /// reflections applied. Each step raises the pairing with rho-check, so
    /// this terminates.
    #[inline]
    pub(crate) fn make_dominant(&self, w: &mut [i32]) -> usize {
        let mut steps = 0;
        while let Some(i) = w.iter().position(|&c| c < 0) {
            self.reflect_in_place(w, i);
            steps += 1;
        }
        steps
    }

    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut out = w.clone();
        self.make_dominant(&mut out.0);
        out
    }

    /// Coefficients of `w` in the simple-root basis, exact.
    pub fn root_coordinates(&self, w: &Weight) -> Vec<Rational> {
        self.inv_cartan
            .iter()
            .map(|row| {
                row.iter()
                    .zip(w.coords())
                    .map(|(a, &x)| *a * i64::from(x))
                    .sum()
            })
            .collect()
    }

    /// `det * (simple-root coefficients of w)`, all integers.
    #[inline]
    pub(crate) fn scaled_root_coordinates(&self, w: &[i32]) -> impl Iterator<Item = i64> + '_ {
        let w: Coords = SmallVec::from_slice(w);
        self.adj
            .iter()
            .map(move |row| row.iter().zip(&w).map(|(a, &x)| a * i64::from(x)).sum())
    }

    pub(crate) fn determinant_scale(&self) -> i64 {
        self.det
    }

    /// `mu <= lam` in the dominance order.
    pub fn dominance_leq(&self, mu: &Weight, lam: &Weight) -> bool {
        let diff = lam - mu;
        self.scaled_root_coordinates(&diff.0).all(|c| c >= 0)
    }

    /// Squared length, exact.
    pub fn norm_sq(&self, w: &Weight) -> Rational {
        Rational::new(self.norm_sq_scaled(w.coords()), self.gram_den)
    }

    /// `gram_den * |w|^2`, an integer.
    #[inline]
    pub(crate) fn norm_sq_scaled(&self, w: &[i32]) -> i64 {
        let mut total = 0i64;
        for (i, row) in self.gram_int.iter().enumerate() {
            let wi = i64::from(w[i]);
            if wi == 0 {
                continue;
            }
            let s: i64 = row.iter().zip(w).map(|(g, &x)| g * i64::from(x)).sum();
            total += wi * s;
        }
        total
    }

    pub fn levi_positive_roots(&self, levi: &[usize]) -> Vec<Root> {
        self.positive_roots
            .iter()
            .filter(|r| r.support().all(|i| levi.contains(&i)))
            .cloned()
            .collect()
    }

    /// Sum of the Levi's positive roots as a weight.
    pub fn two_rho_levi(&self, levi: &[usize]) -> Weight {
        let mut acc = Weight::zero(self.rank());
        for (r, w) in self.positive_roots.iter().zip(&self.root_weights) {
            if r.support().all(|i| levi.contains(&i)) {
                acc = &acc + w;
            }
        }
        acc
    }

    /// Order of the Levi's Weyl group from its root heights: the degrees are
    /// the parts of the partition conjugate to the height distribution, plus one.
    pub fn levi_weyl_order(&self, levi: &[usize]) -> u128 {
        let roots = self.levi_positive_roots(levi);
        let max_h = roots.iter().map(Root::height).max().unwrap_or(0) as usize;
        let mut by_height = vec![0u32; max_h + 2];
        for r in &roots {
            by_height[r.height() as usize] += 1;
        }
        let mut order: u128 = 1;
        for k in 1..=max_h {
            let exps_equal_k = by_height[k] - by_height[k + 1];
            for _ in 0..exps_equal_k {
                order *= (k + 1) as u128;
            }
        }
        order
    }

    pub fn weyl_order(&self) -> u128 {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.levi_weyl_order(&all)
    }
}
