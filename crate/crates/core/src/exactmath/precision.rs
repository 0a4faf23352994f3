use super::Interval;
use crate::error::{Error, Result};

/// Smallest accepted precision.
pub const MIN_BITS: u32 = 8;
/// Default ceiling for precision-refinement loops.
pub const DEFAULT_MAX_BITS: u32 = 4096;
/// Starting point of certification loops.
pub const CERTIFY_START_BITS: u32 = 64;

/// Target width `2^-bits` for interval results, with a ceiling that bounds
/// every refinement loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision {
    bits: u32,
    max_bits: u32,
}

impl Precision {
    pub fn new(bits: u32) -> Result<Self> {
        Self::with_max(bits, DEFAULT_MAX_BITS)
    }

    pub fn with_max(bits: u32, max_bits: u32) -> Result<Self> {
        if bits < MIN_BITS || bits > max_bits {
            return Err(Error::InvalidPrecision {
                bits,
                min: MIN_BITS,
                max: max_bits,
            });
        }
        Ok(Self { bits, max_bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    /// Same ceiling, more bits. Fails if `bits` would exceed the ceiling.
    pub fn with_bits(&self, bits: u32) -> Result<Self> {
        if bits > self.max_bits {
            return Err(Error::PrecisionExhausted {
                needed: bits as u64,
                max: self.max_bits,
            });
        }
        Self::with_max(bits.max(MIN_BITS), self.max_bits)
    }

    /// Next step of the doubling protocol.
    pub fn doubled(&self) -> Result<Self> {
        self.with_bits(self.bits.saturating_mul(2))
    }

    /// Extra bits beyond the target, for internal guard digits. Not capped by
    /// the ceiling: guard bits are an implementation detail of one evaluation.
    pub(crate) fn guarded(&self, extra: u32) -> u32 {
        self.bits + extra
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            bits: 128,
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

/// Runs `attempt` at `start`, `2·start`, … up to the ceiling, returning the
/// first success. Only [`Error::Uncertifiable`] triggers a retry.
pub fn refine<T>(start: Precision, mut attempt: impl FnMut(Precision) -> Result<T>) -> Result<T> {
    let mut prec = start;
    loop {
        match attempt(prec) {
            Err(Error::Uncertifiable(_)) => {
                prec = prec.doubled().map_err(|_| Error::PrecisionExhausted {
                    needed: prec.bits() as u64 * 2,
                    max: prec.max_bits(),
                })?;
            }
            other => return other,
        }
    }
}

/// Evaluates `eval` at increasing internal precision until the enclosure is
/// at most `2^-(bits+1)` wide, then rounds it outward to a dyadic interval of
/// width at most `2^-bits`.
pub fn to_width(
    prec: Precision,
    mut eval: impl FnMut(Precision) -> Result<Interval>,
) -> Result<Interval> {
    let target = prec.bits();
    let mut extra = 8;
    loop {
        let bits = target + extra;
        let inner = Precision::with_max(bits, bits.max(prec.max_bits()))?;
        let iv = eval(inner)?;
        if iv.width_within(target + 1) {
            return Ok(iv.round_outward(target + 2));
        }
        if extra > prec.max_bits() {
            return Err(Error::PrecisionExhausted {
                needed: bits as u64,
                max: prec.max_bits(),
            });
        }
        extra *= 2;
    }
}

/// Starting precision of certification loops under the ceiling of `prec`.
pub fn certify_start(prec: Precision) -> Precision {
    let bits = CERTIFY_START_BITS.max(prec.bits()).min(prec.max_bits());
    Precision::with_max(bits, prec.max_bits()).unwrap_or(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_are_enforced() {
        assert!(Precision::new(7).is_err());
        assert!(Precision::new(8).is_ok());
        assert!(Precision::new(4096).is_ok());
        assert!(Precision::new(4097).is_err());
        assert!(Precision::with_max(64, 32).is_err());
    }

    #[test]
    fn doubling_stops_at_ceiling() {
        let p = Precision::with_max(64, 200).unwrap();
        let p = p.doubled().unwrap();
        assert_eq!(p.bits(), 128);
        assert!(matches!(
            p.doubled(),
            Err(Error::PrecisionExhausted {
                needed: 256,
                max: 200
            })
        ));
    }

    #[test]
    fn refine_retries_only_uncertifiable() {
        let start = Precision::with_max(16, 128).unwrap();
        let mut seen = vec![];
        let out = refine(start, |p| {
            seen.push(p.bits());
            if p.bits() < 64 {
                Err(Error::Uncertifiable("x".into()))
            } else {
                Ok(p.bits())
            }
        });
        assert_eq!(out, Ok(64));
        assert_eq!(seen, vec![16, 32, 64]);

        let out: Result<()> = refine(start, |_| Err(Error::Uncertifiable("x".into())));
        assert!(matches!(out, Err(Error::PrecisionExhausted { .. })));

        let out: Result<()> = refine(start, |_| Err(Error::Precondition("no".into())));
        assert!(matches!(out, Err(Error::Precondition(_))));
    }
}
