//! The base surface and Riemann-Roch section counts.

use crate::error::{Error, Result};
use crate::linebundle::{DegreeContext, LineBundle};

/// A closed Riemann surface of genus at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Curve {
    genus: u32,
}

impl Curve {
    pub fn new(genus: u32) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidGenus(genus));
        }
        Ok(Curve { genus })
    }

    pub fn genus(self) -> u32 {
        self.genus
    }

    /// `deg K = 2g - 2`.
    pub fn canonical_degree(self) -> i64 {
        2 * i64::from(self.genus) - 2
    }

    /// Euler characteristic `deg - g + 1` of a line bundle of the given degree.
    pub fn riemann_roch_chi(self, degree: i64) -> i64 {
        degree - i64::from(self.genus) + 1
    }
}

/// Whether a section count is forced or only holds for a general bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exactness {
    Exact,
    GenericAssumption,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SectionCount {
    pub value: i64,
    pub exactness: Exactness,
}

impl SectionCount {
    fn exact(value: i64) -> Self {
        SectionCount { value, exactness: Exactness::Exact }
    }

    pub fn is_exact(self) -> bool {
        self.exactness == Exactness::Exact
    }
}

/// `h^0` of a formal line bundle.
///
/// Negative degree, `O`, `K` and degrees above `2g - 2` are exact. Anything
/// else gets the value of a general bundle of that degree.
pub fn h0(ctx: &DegreeContext, bundle: &LineBundle) -> Result<SectionCount> {
    let curve = ctx.curve();
    let deg = ctx.degree(bundle)?;
    let g = i64::from(curve.genus());
    Ok(if deg < 0 {
        SectionCount::exact(0)
    } else if bundle.is_trivial() {
        SectionCount::exact(1)
    } else if bundle.as_k_power() == Some(1) {
        SectionCount::exact(g)
    } else if deg > curve.canonical_degree() {
        SectionCount::exact(curve.riemann_roch_chi(deg))
    } else {
        SectionCount {
            value: curve.riemann_roch_chi(deg).max(0),
            exactness: Exactness::GenericAssumption,
        }
    })
}
