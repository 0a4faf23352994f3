//! Integer thresholds: levels from `l > 1/(α·C_p)`, the uniform level for
//! `A_g`, the level for moduli of curves, codimension bounds and the volume
//! coefficient.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::{grushevsky_alpha_eff, weissauer_alpha_base};
use crate::error::{check_range, Error, Result};
use crate::exactmath::{
    certify_start, e_interval, integer, pi_interval, refine, smallest_integer_above, to_width,
    Interval, Precision, Value,
};
use crate::siegel::{dimension, gamma, siegel_c, table_c, triangular_split};
use crate::Rational;

/// Uniform level for `A_g`.
pub const UNIFORM_LEVEL: u64 = 54;
/// Genera checked individually against the uniform level.
pub const UNIFORM_CHECK_GENERA: std::ops::RangeInclusive<u32> = 2..=30;

/// Largest genus for which [`mg_level`] minimizes over shapes; beyond it the
/// closed-form table is used.
pub const MG_ENUMERATION_MAX_GENUS: u32 = 12;

/// Published level bounds for moduli of curves of genus 2 to 11.
pub const MG_REFERENCE_LEVELS: [(u32, u64); 10] = [
    (2, 37),
    (3, 49),
    (4, 49),
    (5, 37),
    (6, 25),
    (7, 22),
    (8, 13),
    (9, 13),
    (10, 9),
    (11, 8),
];

/// How a published level bound is stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `l > value`
    Strict,
    /// `l >= value`
    NonStrict,
}

/// A level bound as stated in the literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PublishedLevel {
    pub value: u64,
    pub relation: Relation,
}

impl PublishedLevel {
    /// Smallest level the statement admits.
    pub fn smallest_level(&self) -> u64 {
        match self.relation {
            Relation::Strict => self.value + 1,
            Relation::NonStrict => self.value,
        }
    }
}

/// The quantity `1/(α·C_p)`, the least integer strictly above it, and how
/// that compares with a published bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub g: Option<u32>,
    #[serde(serialize_with = "crate::serde_text::value")]
    pub quantity: Value,
    pub certified_level: u64,
    pub published: Option<PublishedLevel>,
    /// Whether `certified_level` equals the published smallest level.
    pub agrees: Option<bool>,
    /// `certified_level` minus the published smallest level.
    pub offset: Option<i64>,
}

impl LevelReport {
    fn new(g: Option<u32>, quantity: Value, level: BigInt) -> Result<Self> {
        let certified_level = level
            .to_u64()
            .ok_or_else(|| Error::Precondition(format!("level {level} does not fit in 64 bits")))?;
        Ok(Self {
            g,
            quantity,
            certified_level,
            published: None,
            agrees: None,
            offset: None,
        })
    }

    fn with_published(mut self, published: PublishedLevel) -> Self {
        let offset = self.certified_level as i64 - published.smallest_level() as i64;
        self.published = Some(published);
        self.agrees = Some(offset == 0);
        self.offset = Some(offset);
        self
    }
}

/// `1/(α·c_p)` and the least integer above it for an exact `α`.
pub fn level_threshold(alpha: &Rational, c_p: &Rational) -> Result<LevelReport> {
    if !(alpha > &Rational::zero() && c_p > &Rational::zero()) {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} and C_p = {c_p} must be positive"
        )));
    }
    let q = (alpha * c_p).recip();
    let level = smallest_integer_above(&q)?;
    LevelReport::new(None, Value::Exact(q), level)
}

/// [`level_threshold`] for an `α` known through enclosures. `alpha` is
/// re-evaluated at doubling precision until the level is certain.
pub fn level_threshold_refined(
    mut alpha: impl FnMut(Precision) -> Result<Interval>,
    c_p: &Rational,
    prec: Precision,
) -> Result<LevelReport> {
    if c_p <= &Rational::zero() {
        return Err(Error::Precondition(format!("C_p = {c_p} must be positive")));
    }
    let (q, level) = refine(certify_start(prec), |p| {
        let a = alpha(p)?;
        if !a.is_positive() {
            return Err(Error::Uncertifiable(format!("alpha enclosure {a}")));
        }
        let q = a.scale(c_p).recip()?;
        let level = smallest_integer_above(&q)?;
        Ok((q, level))
    })?;
    LevelReport::new(None, Value::Enclosed(q), level)
}

/// Kobayashi-hyperbolicity level for `A_g(l)` from Weissauer's bound and
/// `γ = 2/(g(g+1))`: the quantity is exactly `6g`.
pub fn ag_kobayashi_level(g: u32) -> Result<LevelReport> {
    let report = level_threshold(&weissauer_alpha_base(g)?, &gamma(g))?;
    debug_assert_eq!(report.quantity, Value::Exact(integer(6 * g as i64)));
    Ok(LevelReport {
        g: Some(g),
        ..report
    }
    .with_published(PublishedLevel {
        value: 6 * g as u64,
        relation: Relation::Strict,
    }))
}

/// Enclosure of `1/(α_eff·γ)` with Grushevsky's `α_eff`.
pub fn grushevsky_level_quantity(g: u32, prec: Precision) -> Result<Interval> {
    let g2 = gamma(g);
    to_width(prec, |inner| {
        grushevsky_alpha_eff(g, inner)?.scale(&g2).recip()
    })
}

/// Enclosure of `e(2π)^2/2`.
pub fn uniform_bound(prec: Precision) -> Result<Interval> {
    to_width(prec, |inner| {
        let pi = pi_interval(inner)?;
        Ok(&e_interval(inner)? * &pi.powi(2).scale(&integer(2)))
    })
}

/// One genus of the uniform check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformEntry {
    pub g: u32,
    #[serde(serialize_with = "crate::serde_text::interval")]
    pub quantity: Interval,
}

/// The uniform level for `A_g(l)` and the per-genus values it dominates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformLevel {
    pub report: LevelReport,
    pub per_genus: Vec<UniformEntry>,
}

/// Certifies `e(2π)^2/2 < 54` and, for each genus in
/// [`UNIFORM_CHECK_GENERA`], that `1/(α_eff·γ)` lies below it.
pub fn ag_uniform_level(prec: Precision) -> Result<UniformLevel> {
    let (bound, level) = refine(certify_start(prec), |p| {
        let b = uniform_bound(p)?;
        let level = smallest_integer_above(&b)?;
        Ok((b, level))
    })?;
    let per_genus = UNIFORM_CHECK_GENERA
        .map(|g| {
            refine(certify_start(prec), |p| {
                let q = grushevsky_level_quantity(g, p)?;
                if q.lt(bound.lo()) {
                    Ok(UniformEntry { g, quantity: q })
                } else {
                    Err(Error::Uncertifiable(format!("g={g}: {q}")))
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report =
        LevelReport::new(None, Value::Enclosed(bound), level)?.with_published(PublishedLevel {
            value: UNIFORM_LEVEL,
            relation: Relation::NonStrict,
        });
    Ok(UniformLevel { report, per_genus })
}

/// The `k` of the curve-moduli threshold: largest with `k(k+1)/2 <= 3g-4`.
pub fn mg_k(g: u32) -> u32 {
    let (k, _) = triangular_split(3 * g - 3);
    // the same k by the closed formula floor((sqrt(24g-31) - 1)/2); the
    // radicand is never a perfect square
    let closed = ((24 * g as u64 - 31).sqrt() - 1) / 2;
    debug_assert_eq!(k as u64, closed);
    k
}

/// General-type level for moduli of curves: `1/(α_base·C_{3g-3})` with
/// Weissauer's bound, compared with the published table for `g <= 11` and
/// with `6(g-k-1)` beyond.
pub fn mg_level(g: u32) -> Result<LevelReport> {
    check_range("g", g as u64, 2, u32::MAX as u64 / 24)?;
    let p = 3 * g - 3;
    let c = if g <= MG_ENUMERATION_MAX_GENUS {
        siegel_c(g, p)?
    } else {
        table_c(g, p)?
    };
    let report = level_threshold(&weissauer_alpha_base(g)?, &c)?;
    let report = LevelReport {
        g: Some(g),
        ..report
    };
    let published = match MG_REFERENCE_LEVELS.iter().find(|(h, _)| *h == g) {
        Some(&(_, value)) => PublishedLevel {
            value,
            relation: Relation::NonStrict,
        },
        None => PublishedLevel {
            value: 6 * (g - mg_k(g) - 1) as u64,
            relation: Relation::NonStrict,
        },
    };
    Ok(report.with_published(published))
}

/// Largest codimension `c` of subvarieties of `A_g` covered by Weissauer's
/// bound: `(g+1)/12 > 1/C_p` at `p = dim A_g - c`. This is `g - 12`.
pub fn ag_max_general_type_codim(g: u32) -> Result<u32> {
    if g < 12 {
        return Err(Error::NoQualifyingCodimension(g));
    }
    let alpha = weissauer_alpha_base(g)?;
    let n = dimension(g);
    let qualifies = |c: u32| -> Result<bool> { Ok(&alpha * table_c(g, n - c)? > Rational::one()) };
    if !qualifies(0)? {
        return Err(Error::NoQualifyingCodimension(g));
    }
    // C_p is non-decreasing in p, so the qualifying codimensions are 0..=c
    let mut c = 0;
    while c + 1 < n && qualifies(c + 1)? {
        c += 1;
    }
    debug_assert_eq!(c, g - 12);
    // the isotropy criterion needs p >= dim A_g - g + 7
    debug_assert!(c <= g - 7);
    Ok(c)
}

/// Enclosure of `((c_p - λ/α)/(2π))^q` for `0 < λ < c_p·α`.
pub fn volume_factor(
    c_p: &Rational,
    lambda: &Rational,
    alpha: &Rational,
    q: u32,
    prec: Precision,
) -> Result<Interval> {
    let zero = Rational::zero();
    if !(alpha > &zero && lambda > &zero && lambda < &(c_p * alpha)) {
        return Err(Error::Precondition(format!(
            "need 0 < lambda < C_p·alpha, got lambda = {lambda}, C_p = {c_p}, alpha = {alpha}"
        )));
    }
    if q == 0 {
        return Ok(Interval::point(Rational::one()));
    }
    let x = c_p - lambda / alpha;
    to_width(prec, |inner| {
        let two_pi = pi_interval(inner)?.scale(&integer(2));
        Ok(two_pi.recip()?.scale(&x).powi(q))
    })
}
