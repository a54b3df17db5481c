/// Numerical tolerances shared by validation routines.
///
/// `structural` applies to normalization, unitarity, Hermiticity and
/// orthonormality checks; `spectral` to identities that go through an
/// eigen- or singular-value decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub structural: f64,
    pub spectral: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances { structural: 1e-9, spectral: 1e-8 };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
