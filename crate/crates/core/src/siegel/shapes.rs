use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{check_range, Result};

/// Compressed description of a candidate subset of the upper triangle
/// `T = {(i, j) : 1 <= i <= j <= g}`.
///
/// `k` diagonal elements occupy the `k` largest indices; row `j` holds
/// `rows[j-1]` off-diagonal elements packed against the right edge. The
/// derived order is lexicographic on `(k, rows)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GammaShape {
    pub k: u32,
    pub rows: Vec<u32>,
}

impl GammaShape {
    pub fn genus(&self) -> u32 {
        self.rows.len() as u32 + 1
    }

    /// Number of elements of the subset.
    pub fn cardinality(&self) -> u32 {
        self.k + self.rows.iter().sum::<u32>()
    }

    /// Row capacities `a_j <= g - j` and `k <= g - 1`.
    pub fn is_valid(&self) -> bool {
        let g = self.genus();
        self.k < g
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, &a)| a <= g - 1 - i as u32)
    }
}

impl fmt::Display for GammaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, rows=(", self.k)?;
        for (i, a) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "))")
    }
}

/// Linear coefficients `b_1..b_g` of a quadratic program over the ordered
/// simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CoefficientVector(pub Vec<u32>);

impl CoefficientVector {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl From<Vec<u32>> for CoefficientVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

pub fn dimension(g: u32) -> u32 {
    g * (g + 1) / 2
}

type Levels = Vec<Arc<[GammaShape]>>;

static SHAPES: OnceLock<Mutex<HashMap<u32, Levels>>> = OnceLock::new();

fn step(g: u32, previous: &[GammaShape]) -> Vec<GammaShape> {
    let last = (g - 2) as usize;
    let mut next = BTreeSet::new();
    for shape in previous {
        if shape.k < g - 1 {
            next.insert(GammaShape {
                k: shape.k + 1,
                rows: shape.rows.clone(),
            });
        }
        let a = &shape.rows;
        for i in 0..last {
            let capacity = g - 1 - i as u32;
            // the row below must be ahead of this one or already full
            if a[i] < capacity && (a[i] < a[i + 1] || a[i + 1] == capacity - 1) {
                let mut rows = a.clone();
                rows[i] += 1;
                next.insert(GammaShape { k: shape.k, rows });
            }
        }
        if a[last] == 0 {
            let mut rows = a.clone();
            rows[last] = 1;
            next.insert(GammaShape { k: shape.k, rows });
        }
    }
    next.into_iter().collect()
}

/// All packed shapes of cardinality `p - 1`, built level by level from the
/// single empty shape at `p = 1`. Results are sorted and memoized per `g`.
pub fn enumerate_shapes(g: u32, p: u32) -> Result<Arc<[GammaShape]>> {
    check_range("g", g as u64, 2, u32::MAX as u64)?;
    check_range("p", p as u64, 1, dimension(g) as u64)?;
    let cache = SHAPES.get_or_init(Default::default);
    let mut cache = cache.lock().expect("shape cache poisoned");
    let levels = cache.entry(g).or_insert_with(|| {
        vec![Arc::from(vec![GammaShape {
            k: 0,
            rows: vec![0; (g - 1) as usize],
        }])]
    });
    while levels.len() < p as usize {
        let next = step(g, levels.last().expect("base level present"));
        levels.push(Arc::from(next));
    }
    Ok(levels[(p - 1) as usize].clone())
}

/// Coefficient of `m_i` contributed by the shape's elements, diagonal
/// elements counted twice.
///
/// Row `j` contributes `a_j` at position `j` and one unit at each of the
/// `a_j` right-most columns; the diagonal adds 2 at the last `k` positions.
pub fn lin_part(g: u32, shape: &GammaShape) -> CoefficientVector {
    debug_assert_eq!(shape.genus(), g);
    let g = g as usize;
    let mut b = vec![0u32; g];
    for (i, &a) in shape.rows.iter().enumerate() {
        b[i] += a;
        for slot in b.iter_mut().rev().take(a as usize) {
            *slot += 1;
        }
    }
    for slot in b.iter_mut().rev().take(shape.k as usize) {
        *slot += 2;
    }
    CoefficientVector(b)
}
