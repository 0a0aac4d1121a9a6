//! Sparse exact arithmetic in the group ring of the weight lattice.
//!
//! An [`ExponentialSum`] is a finite formal sum `sum c_lambda e^lambda` with
//! nonzero `i128` coefficients. All coefficient arithmetic is checked.

use std::collections::hash_map::Entry;

use rustc_hash::{FxHashMap, FxHashSet};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rootsys::{Coords, Root, RootSystem, Weight};

pub type Coefficient = i128;

/// Default bound on stored or expanded terms.
pub const DEFAULT_TERM_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialSum {
    rank: usize,
    terms: FxHashMap<Weight, Coefficient>,
}

#[inline]
fn accumulate(
    terms: &mut FxHashMap<Weight, Coefficient>,
    key: Weight,
    c: Coefficient,
) -> Result<()> {
    match terms.entry(key) {
        Entry::Occupied(mut e) => {
            let v = e.get().checked_add(c).ok_or(Error::ArithmeticOverflow)?;
            if v == 0 {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        Entry::Vacant(e) => {
            if c != 0 {
                e.insert(c);
            }
        }
    }
    Ok(())
}

impl ExponentialSum {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: FxHashMap::default(),
        }
    }

    /// `e^0`.
    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), 1)
    }

    pub fn monomial(w: Weight, c: Coefficient) -> Self {
        let mut s = Self::zero(w.rank());
        if c != 0 {
            s.terms.insert(w, c);
        }
        s
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Weight, Coefficient)>) -> Result<Self> {
        let mut s = Self::zero(rank);
        for (w, c) in terms {
            s.add_term(w, c)?;
        }
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Weight) -> Coefficient {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, Coefficient)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn add_term(&mut self, w: Weight, c: Coefficient) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: w.rank(),
            });
        }
        accumulate(&mut self.terms, w, c)
    }

    /// Value under `e^lambda -> 1`.
    pub fn coefficient_sum(&self) -> Result<Coefficient> {
        self.terms
            .values()
            .try_fold(0i128, |acc, &c| acc.checked_add(c))
            .ok_or(Error::ArithmeticOverflow)
    }

    /// `self * (1 - e^alpha)`.
    pub fn mul_binomial(&self, alpha: &Weight) -> Result<Self> {
        if alpha.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: alpha.rank(),
            });
        }
        let mut out = self.clone();
        out.terms.reserve(self.len());
        for (mu, &c) in &self.terms {
            accumulate(&mut out.terms, mu + alpha, c.checked_neg().ok_or(Error::ArithmeticOverflow)?)?;
        }
        Ok(out)
    }

    /// Plain convolution product.
    pub fn mul(&self, other: &Self, cap: u64) -> Result<Self> {
        let needed = (self.len() as u64).saturating_mul(other.len() as u64);
        if needed > cap {
            return Err(Error::ResourceLimit { needed, cap });
        }
        let mut out = Self::zero(self.rank);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let c = x.checked_mul(y).ok_or(Error::ArithmeticOverflow)?;
                accumulate(&mut out.terms, a + b, c)?;
            }
        }
        Ok(out)
    }

    /// Replaces every exponent by its dominant Weyl conjugate and merges.
    pub fn symmetrize_dominant(&self, rs: &RootSystem) -> Result<Self> {
        let mut out = Self::zero(self.rank);
        for (w, &c) in &self.terms {
            accumulate(&mut out.terms, rs.dominant_representative(w), c)?;
        }
        Ok(out)
    }

    /// The unique exponent strictly above every other one in the dominance
    /// order, with its coefficient. The candidate is the unique key of
    /// maximal norm, since `lambda > mu` for dominant weights forces
    /// `|lambda| > |mu|`.
    pub fn leading_term(&self, rs: &RootSystem) -> Result<(Weight, Coefficient)> {
        if self.is_empty() {
            return Err(Error::EmptySum);
        }
        let mut best: Option<(i64, &Weight)> = None;
        let mut ties = 0usize;
        for w in self.terms.keys() {
            let n = rs.norm_sq_scaled(w.coords());
            match best {
                Some((b, _)) if n < b => {}
                Some((b, _)) if n == b => ties += 1,
                _ => {
                    best = Some((n, w));
                    ties = 1;
                }
            }
        }
        let (_, lam) = best.expect("nonempty");
        if ties > 1 {
            return Err(Error::NoLeadingTerm { candidates: ties });
        }
        if !self.terms.keys().all(|mu| rs.dominance_leq(mu, lam)) {
            return Err(Error::NoLeadingTerm { candidates: 0 });
        }
        let c = self.terms[lam];
        if c.abs() != 1 {
            log::warn!("leading coefficient {c} at {lam} has absolute value != 1");
        }
        Ok((lam.clone(), c))
    }

    /// Terms sorted by (height of the exponent, coordinates).
    pub fn sorted_terms(&self, rs: &RootSystem) -> Vec<(Weight, Coefficient)> {
        let mut v: Vec<(i64, Weight, Coefficient)> = self
            .terms
            .iter()
            .map(|(w, &c)| (rs.scaled_root_coordinates(w.coords()).sum(), w.clone(), c))
            .collect();
        v.sort();
        v.into_iter().map(|(_, w, c)| (w, c)).collect()
    }
}

/// Result of a product computation with its memory high-water mark.
#[derive(Debug, Clone)]
pub struct Product {
    pub sum: ExponentialSum,
    pub terms_peak: u64,
}

/// `prod (1 - e^alpha)` fully expanded, multiplying roots in increasing height.
pub fn product_over_roots(rs: &RootSystem, roots: &[Root], cap: u64) -> Result<Product> {
    let mut ordered: Vec<&Root> = roots.iter().collect();
    ordered.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.coords().cmp(b.coords())));
    product_in_order(rs, ordered.into_iter(), cap)
}

/// Same product, multiplying in the given order.
pub fn product_in_order<'a>(
    rs: &RootSystem,
    roots: impl Iterator<Item = &'a Root>,
    cap: u64,
) -> Result<Product> {
    let mut acc = ExponentialSum::one(rs.rank());
    let mut peak = 1u64;
    for r in roots {
        if r.coords().len() != rs.rank() {
            return Err(Error::RankMismatch {
                expected: rs.rank(),
                got: r.coords().len(),
            });
        }
        acc = acc.mul_binomial(&rs.root_as_weight(r))?;
        if acc.len() as u64 > cap {
            return Err(Error::ResourceLimit {
                needed: acc.len() as u64,
                cap,
            });
        }
        peak = peak.max(acc.len() as u64);
    }
    Ok(Product {
        sum: acc,
        terms_peak: peak,
    })
}

/// The Weyl group of a Levi subsystem, enumerated as the free orbit of
/// `sum_{j in J} omega_j` under the simple reflections in J. Element 0 is
/// the identity; element k is `s_{via[k]} * element(parent[k])`.
#[derive(Debug, Clone)]
pub struct LeviWeylGroup {
    levi: Vec<usize>,
    parent: Vec<u32>,
    via: Vec<u8>,
    sign: Vec<i8>,
}

impl LeviWeylGroup {
    pub fn enumerate(rs: &RootSystem, levi: &[usize], cap: u64) -> Result<Self> {
        let order = rs.levi_weyl_order(levi);
        if order > u128::from(cap) {
            return Err(Error::ResourceLimit {
                needed: u64::try_from(order).unwrap_or(u64::MAX),
                cap,
            });
        }
        let n = rs.rank();
        let mut levi: Vec<usize> = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        let mut start: Coords = SmallVec::from_elem(0, n);
        for &j in &levi {
            start[j] = 1;
        }
        let mut seen: FxHashSet<Coords> = FxHashSet::default();
        seen.insert(start.clone());
        let mut points = vec![start];
        let mut parent = vec![0u32];
        let mut via = vec![0u8];
        let mut sign = vec![1i8];
        let mut head = 0;
        while head < points.len() {
            for &j in &levi {
                let mut next = points[head].clone();
                rs.reflect_in_place(&mut next, j);
                if seen.insert(next.clone()) {
                    points.push(next);
                    parent.push(head as u32);
                    via.push(j as u8);
                    sign.push(-sign[head]);
                }
            }
            head += 1;
        }
        debug_assert_eq!(points.len() as u128, order);
        Ok(Self {
            levi,
            parent,
            via,
            sign,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    /// Calls `f(w y, det w)` for every element w.
    fn for_each_image(
        &self,
        rs: &RootSystem,
        y: &[i32],
        buf: &mut Vec<i32>,
        mut f: impl FnMut(&[i32], i8) -> Result<()>,
    ) -> Result<()> {
        let n = y.len();
        buf.clear();
        buf.extend_from_slice(y);
        f(y, 1)?;
        for k in 1..self.len() {
            let p = self.parent[k] as usize;
            buf.extend_from_within(p * n..(p + 1) * n);
            let cur = &mut buf[k * n..(k + 1) * n];
            rs.reflect_in_place(cur, self.via[k] as usize);
            f(&buf[k * n..(k + 1) * n], self.sign[k])?;
        }
        Ok(())
    }

    /// Moves `y` into the closed J-dominant chamber; returns the parity of
    /// the reflections used, or `None` if `y` ends on a wall (is J-singular).
    fn j_dominate(&self, rs: &RootSystem, y: &mut [i32]) -> Option<i8> {
        let mut sign = 1i8;
        while let Some(&j) = self.levi.iter().find(|&&j| y[j] < 0) {
            rs.reflect_in_place(y, j);
            sign = -sign;
        }
        if self.levi.iter().any(|&j| y[j] == 0) {
            None
        } else {
            Some(sign)
        }
    }
}

/// `prod_{alpha in R_+(L)} (1 - e^alpha) = sum_{w in W_L} det(w) e^{rho_L - w rho_L}`.
pub fn weyl_denominator_levi(rs: &RootSystem, levi: &[usize], cap: u64) -> Result<ExponentialSum> {
    let group = LeviWeylGroup::enumerate(rs, levi, cap)?;
    let two_rho = rs.two_rho_levi(levi);
    let mut out = ExponentialSum::zero(rs.rank());
    let mut buf = Vec::new();
    group.for_each_image(rs, two_rho.coords(), &mut buf, |img, s| {
        let e: Coords = two_rho
            .coords()
            .iter()
            .zip(img)
            .map(|(a, b)| (a - b) / 2)
            .collect();
        accumulate(&mut out.terms, Weight(e), s.into())
    })?;
    Ok(out)
}

/// Expands `Delta_L * q` for a `W_L`-invariant `q`, where `Delta_L` is the
/// Levi Weyl denominator, calling `emit(exponent, coefficient)` per term.
///
/// Reindexing the product gives `sum_mu c_mu sum_w det(w) e^{rho_L + w(mu - rho_L)}`,
/// so terms of `q` are grouped by the `W_L`-orbit of `mu - rho_L` (signed),
/// J-singular orbits vanish, and each surviving orbit is expanded once.
/// Returns the number of emitted terms.
fn expand_levi_times_invariant(
    rs: &RootSystem,
    group: &LeviWeylGroup,
    q: &ExponentialSum,
    cap: u64,
    mut emit: impl FnMut(&mut [i32], Coefficient) -> Result<()>,
) -> Result<u64> {
    let two_rho = rs.two_rho_levi(group.levi());
    let mut classes: FxHashMap<Coords, Coefficient> = FxHashMap::default();
    for (mu, c) in q.iter() {
        let mut y: Coords = mu
            .coords()
            .iter()
            .zip(two_rho.coords())
            .map(|(m, r)| 2 * m - r)
            .collect();
        if let Some(s) = group.j_dominate(rs, &mut y) {
            let v = if s > 0 { c } else { c.checked_neg().ok_or(Error::ArithmeticOverflow)? };
            match classes.entry(y) {
                Entry::Occupied(mut e) => {
                    let t = e.get().checked_add(v).ok_or(Error::ArithmeticOverflow)?;
                    if t == 0 {
                        e.remove();
                    } else {
                        *e.get_mut() = t;
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(v);
                }
            }
        }
    }
    let needed = (classes.len() as u64).saturating_mul(group.len() as u64);
    if needed > cap {
        return Err(Error::ResourceLimit { needed, cap });
    }
    // Deterministic class order.
    let mut classes: Vec<(Coords, Coefficient)> = classes.into_iter().collect();
    classes.sort_unstable();
    let mut buf = Vec::new();
    let mut term: Coords = SmallVec::from_elem(0, rs.rank());
    for (y, c) in &classes {
        group.for_each_image(rs, y, &mut buf, |img, s| {
            for ((t, a), b) in term.iter_mut().zip(two_rho.coords()).zip(img) {
                *t = (a + b) / 2;
            }
            let v = if s > 0 { *c } else { -*c };
            emit(&mut term, v)
        })?;
    }
    Ok(needed)
}

/// `Delta_L * q` as a plain (unsymmetrized) sum; `q` must be `W_L`-invariant.
pub fn levi_times_invariant(
    rs: &RootSystem,
    group: &LeviWeylGroup,
    q: &ExponentialSum,
    cap: u64,
) -> Result<ExponentialSum> {
    let mut out = ExponentialSum::zero(rs.rank());
    expand_levi_times_invariant(rs, group, q, cap, |e, c| {
        accumulate(&mut out.terms, Weight(SmallVec::from_slice(e)), c)
    })?;
    Ok(out)
}

/// `symmetrize_dominant(Delta_L * q)` without materializing the product.
/// Returns the symmetrized sum and the number of expanded terms.
pub fn levi_times_invariant_symmetrized(
    rs: &RootSystem,
    group: &LeviWeylGroup,
    q: &ExponentialSum,
    cap: u64,
) -> Result<(ExponentialSum, u64)> {
    let mut out = ExponentialSum::zero(rs.rank());
    let expanded = expand_levi_times_invariant(rs, group, q, cap, |e, c| {
        rs.make_dominant(e);
        accumulate(&mut out.terms, Weight(SmallVec::from_slice(e)), c)
    })?;
    Ok((out, expanded))
}
