//! Shared analysis parameters.

/// Tunable parameters for barcode extraction, endpoint matching and rank
/// tests. The defaults are what every CLI command and report uses unless
/// overridden by flags.
#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    /// Relative tolerance for filtration-value ties and endpoint matching.
    /// Two values `a`, `b` are identified when `|a - b| <= tol * (1 + |a|)`.
    pub tol: f64,
    /// Relative singular-value threshold for numerical rank: singular values
    /// above `rank_tol * sigma_max` count toward the rank.
    pub rank_tol: f64,
    /// Maximum homology degree for Vietoris–Rips barcodes. `None` means the
    /// full default `n - 2`, which captures every possible degree.
    pub max_degree_vr: Option<usize>,
    /// Maximum homology degree for Čech barcodes. `None` means the ambient
    /// dimension `d`; union-of-balls homology vanishes above it.
    pub max_degree_cech: Option<usize>,
    /// Hard cap on the number of simplices in a filtered complex.
    pub complex_budget: usize,
    /// Trial count for randomized rigidity tests.
    pub trials: usize,
    /// Seed for randomized rigidity tests.
    pub seed: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            tol: 1e-9,
            rank_tol: 1e-8,
            max_degree_vr: None,
            max_degree_cech: None,
            complex_budget: 2_000_000,
            trials: 3,
            seed: 0,
        }
    }
}

impl AnalysisConfig {
    /// Effective Vietoris–Rips degree cap for a cloud of `n` points.
    pub fn vr_degree(&self, n: usize) -> usize {
        self.max_degree_vr.unwrap_or(n.saturating_sub(2))
    }

    /// Effective Čech degree cap for ambient dimension `d`.
    pub fn cech_degree(&self, d: usize) -> usize {
        self.max_degree_cech.unwrap_or(d)
    }
}
