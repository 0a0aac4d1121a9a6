//! The dominant weight L(O) of a nilpotent orbit.
//!
//! The main pipeline expands `prod (1 - e^alpha)` over the positive roots
//! with `alpha(h) <= 1`, moves every exponent to the dominant chamber,
//! cancels, and reads off the dominance-maximal term. Expansion must finish
//! before symmetrization: the two steps do not commute.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groupring::{
    levi_times_invariant_symmetrized, product_over_roots, ExponentialSum, LeviWeylGroup,
    DEFAULT_TERM_CAP,
};
use crate::orbits::{diagram_from_partition, partitions, OrbitLabel, Partition, WeightedDynkinDiagram};
use crate::rootsys::{CartanType, Family, Rational, Root, RootSystem, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Expand every binomial, then symmetrize.
    FullProduct,
    /// Levi factor via the Weyl denominator identity, the rest by binomials.
    HybridLevi,
    /// `dominant(2 rho_L)` for the zero-label Levi; even orbits only.
    Richardson,
    /// Type A: the diagram of the transposed partition.
    GlTranspose,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::FullProduct => "full_product",
            Strategy::HybridLevi => "hybrid_levi",
            Strategy::Richardson => "richardson",
            Strategy::GlTranspose => "gl_transpose",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "full_product" => Ok(Strategy::FullProduct),
            "hybrid" | "hybrid_levi" => Ok(Strategy::HybridLevi),
            "richardson" => Ok(Strategy::Richardson),
            "gl" | "gl_transpose" => Ok(Strategy::GlTranspose),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LMapConfig {
    pub strategy: Strategy,
    /// Bound on stored or expanded terms per orbit.
    pub cap: u64,
    /// Largest Levi Weyl group the hybrid strategy will enumerate.
    pub levi_cap: u64,
}

impl Default for LMapConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::HybridLevi,
            cap: DEFAULT_TERM_CAP,
            levi_cap: 1_000_000,
        }
    }
}

impl LMapConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Stats {
    pub terms_peak: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LMapResult {
    pub orbit: Option<OrbitLabel>,
    pub diagram: WeightedDynkinDiagram,
    pub weight: Weight,
    pub norm_sq: Rational,
    pub leading_sign: i8,
    pub strategy: Strategy,
    pub stats: Stats,
}

/// Positive roots with `alpha(h) = 0` and `alpha(h) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSplit {
    pub zero: Vec<Root>,
    pub one: Vec<Root>,
}

impl RootSplit {
    pub fn all(&self) -> Vec<Root> {
        self.zero.iter().chain(&self.one).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.zero.len() + self.one.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn pairing_with_diagram(r: &Root, h: &WeightedDynkinDiagram) -> Result<i32> {
    h.pairing(r)
}

pub fn roots_le_one(rs: &RootSystem, h: &WeightedDynkinDiagram) -> Result<RootSplit> {
    if h.rank() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            got: h.rank(),
        });
    }
    let mut split = RootSplit {
        zero: Vec::new(),
        one: Vec::new(),
    };
    for r in rs.positive_roots() {
        match h.pairing(r)? {
            0 => split.zero.push(r.clone()),
            1 => split.one.push(r.clone()),
            _ => {}
        }
    }
    Ok(split)
}

fn sign_of(c: i128) -> i8 {
    if c < 0 {
        -1
    } else {
        1
    }
}

fn finish(
    rs: &RootSystem,
    h: &WeightedDynkinDiagram,
    sym: &ExponentialSum,
    strategy: Strategy,
    terms_peak: u64,
    started: Instant,
) -> Result<LMapResult> {
    let (weight, c) = sym.leading_term(rs)?;
    debug_assert!(
        sym.iter().all(|(mu, _)| rs
            .scaled_root_coordinates(&(&weight - mu).0)
            .all(|x| x % rs.determinant_scale() == 0)),
        "exponents left the root lattice"
    );
    Ok(LMapResult {
        orbit: None,
        diagram: h.clone(),
        norm_sq: rs.norm_sq(&weight),
        weight,
        leading_sign: sign_of(c),
        strategy,
        stats: Stats {
            terms_peak: terms_peak.max(sym.len() as u64),
            elapsed: started.elapsed(),
        },
    })
}

fn full_product(rs: &RootSystem, h: &WeightedDynkinDiagram, cap: u64, started: Instant) -> Result<LMapResult> {
    let split = roots_le_one(rs, h)?;
    let product = product_over_roots(rs, &split.all(), cap)?;
    let sym = product.sum.symmetrize_dominant(rs)?;
    finish(rs, h, &sym, Strategy::FullProduct, product.terms_peak, started)
}

fn hybrid(rs: &RootSystem, h: &WeightedDynkinDiagram, config: &LMapConfig, started: Instant) -> Result<LMapResult> {
    let levi = h.zero_nodes();
    if rs.levi_weyl_order(&levi) > u128::from(config.levi_cap) {
        return full_product(rs, h, config.cap, started);
    }
    let split = roots_le_one(rs, h)?;
    debug_assert_eq!(split.zero, rs.levi_positive_roots(&levi));
    let q = product_over_roots(rs, &split.one, config.cap)?;
    let group = LeviWeylGroup::enumerate(rs, &levi, config.levi_cap)?;
    let (sym, expanded) = levi_times_invariant_symmetrized(rs, &group, &q.sum, config.cap)?;
    finish(
        rs,
        h,
        &sym,
        Strategy::HybridLevi,
        q.terms_peak.max(expanded),
        started,
    )
}

fn parity_sign(n: usize) -> i8 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// L(O) for the orbit with weighted Dynkin diagram `h`.
pub fn compute_l(rs: &RootSystem, h: &WeightedDynkinDiagram, config: &LMapConfig) -> Result<LMapResult> {
    if h.rank() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            got: h.rank(),
        });
    }
    let started = Instant::now();
    match config.strategy {
        Strategy::FullProduct => full_product(rs, h, config.cap, started),
        Strategy::HybridLevi => hybrid(rs, h, config, started),
        Strategy::Richardson => {
            if !h.is_even() {
                return Err(Error::StrategyNotApplicable {
                    strategy: "richardson",
                    reason: format!("diagram {h} is not even"),
                });
            }
            let levi = h.zero_nodes();
            let weight = richardson_weight(rs, &levi);
            Ok(LMapResult {
                orbit: None,
                diagram: h.clone(),
                norm_sq: rs.norm_sq(&weight),
                weight,
                leading_sign: parity_sign(rs.levi_positive_roots(&levi).len()),
                strategy: Strategy::Richardson,
                stats: Stats {
                    terms_peak: 0,
                    elapsed: started.elapsed(),
                },
            })
        }
        Strategy::GlTranspose => {
            let ty = rs.cartan_type();
            if ty.family() != Family::A {
                return Err(Error::StrategyNotApplicable {
                    strategy: "gl_transpose",
                    reason: format!("{ty} is not of type A"),
                });
            }
            let p = partitions(ty.rank() as u32 + 1)
                .into_iter()
                .find(|p| diagram_from_partition(p, None, ty).as_ref() == Ok(h))
                .ok_or_else(|| Error::StrategyNotApplicable {
                    strategy: "gl_transpose",
                    reason: format!("{h} is not a diagram of {ty}"),
                })?;
            let weight = gl_dual_weight(&p)?;
            // O(p) is Richardson for the Levi with blocks given by the transpose.
            let levi_roots: u32 = p.transpose().parts().iter().map(|k| k * (k - 1) / 2).sum();
            Ok(LMapResult {
                orbit: Some(OrbitLabel::classical(p, None)),
                diagram: h.clone(),
                norm_sq: rs.norm_sq(&weight),
                weight,
                leading_sign: parity_sign(levi_roots as usize),
                strategy: Strategy::GlTranspose,
                stats: Stats {
                    terms_peak: 0,
                    elapsed: started.elapsed(),
                },
            })
        }
    }
}

/// Dominant conjugate of `2 rho_L`.
pub fn richardson_weight(rs: &RootSystem, levi: &[usize]) -> Weight {
    rs.dominant_representative(&rs.two_rho_levi(levi))
}

/// For `GL_n`: the diagram of the transposed partition, read as a weight of `A_{n-1}`.
pub fn gl_dual_weight(p: &Partition) -> Result<Weight> {
    let n = p.size() as usize;
    if n < 2 {
        return Err(Error::InvalidRank { family: 'A', rank: n.saturating_sub(1) });
    }
    let ty = CartanType::new(Family::A, n - 1)?;
    Ok(diagram_from_partition(&p.transpose(), None, ty)?.as_weight())
}

/// One orbit of a table computation; `outcome` is an error for skipped rows.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub orbit: OrbitLabel,
    pub diagram: WeightedDynkinDiagram,
    pub outcome: Result<LMapResult>,
}

/// Computes every orbit in parallel; output order follows `orbits`.
pub fn compute_table(
    rs: &RootSystem,
    orbits: &[(OrbitLabel, WeightedDynkinDiagram)],
    config: &LMapConfig,
) -> Vec<TableEntry> {
    orbits
        .par_iter()
        .map(|(orbit, diagram)| TableEntry {
            orbit: orbit.clone(),
            diagram: diagram.clone(),
            outcome: compute_l(rs, diagram, config).map(|mut r| {
                r.orbit = Some(orbit.clone());
                r
            }),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReciprocityStatus {
    Confirmed,
    /// No dual orbit has `L(O)` as its diagram.
    MissingDualOrbit,
    /// The dual orbit exists but `L(O')` is not the diagram of O.
    Mismatch { dual_weight: Weight },
    /// The dual orbit exists but was not computed.
    DualNotComputed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityCheck {
    pub orbit: Option<OrbitLabel>,
    pub diagram: WeightedDynkinDiagram,
    pub weight: Weight,
    pub dual_orbit: Option<OrbitLabel>,
    pub status: ReciprocityStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub checks: Vec<ReciprocityCheck>,
}

impl ReciprocityReport {
    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status != ReciprocityStatus::Confirmed)
            .count()
    }
}

/// For every even orbit O with `L(O)` divisible by 2: `L(O)` must be the
/// diagram of a dual orbit O' whose own `L(O')` is the diagram of O.
/// `dual_diagrams` lists every orbit of the dual type, computed or not.
/// Node indices are carried across with [`CartanType::dual_node`].
pub fn check_reciprocity(
    results: &[LMapResult],
    dual_type: CartanType,
    dual_diagrams: &[WeightedDynkinDiagram],
    dual_results: &[LMapResult],
) -> ReciprocityReport {
    let mut report = ReciprocityReport::default();
    for r in results {
        if !r.diagram.is_even() || !r.weight.is_divisible_by(2) {
            continue;
        }
        let to_dual = |w: &Weight| {
            let mut c = vec![0; w.rank()];
            for (i, x) in w.coords().iter().enumerate() {
                c[dual_type.dual_node(i)] = *x;
            }
            Weight::new(&c)
        };
        let target = WeightedDynkinDiagram::from_weight(&to_dual(&r.weight))
            .ok()
            .filter(|d| d.rank() == dual_type.rank() && dual_diagrams.contains(d));
        let (dual_orbit, status) = match target {
            None => (None, ReciprocityStatus::MissingDualOrbit),
            Some(d) => match dual_results.iter().find(|x| x.diagram == d) {
                None => (None, ReciprocityStatus::DualNotComputed),
                Some(dual) if to_dual(&dual.weight) == r.diagram.as_weight() => {
                    (dual.orbit.clone(), ReciprocityStatus::Confirmed)
                }
                Some(dual) => (
                    dual.orbit.clone(),
                    ReciprocityStatus::Mismatch {
                        dual_weight: dual.weight.clone(),
                    },
                ),
            },
        };
        report.checks.push(ReciprocityCheck {
            orbit: r.orbit.clone(),
            diagram: r.diagram.clone(),
            weight: r.weight.clone(),
            dual_orbit,
            status,
        });
    }
    report
}
