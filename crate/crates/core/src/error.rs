use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HeunError {
    #[error("invalid endpoint exponent {0} (must exceed -1)")]
    InvalidExponent(f64),
    #[error("quadrature did not converge within the node budget: {0}")]
    NonConvergence(String),
    #[error("path passes within the clearance radius of a singularity at {0}")]
    SingularityHit(String),
    #[error("adaptive step fell below the minimum step size at s = {0}")]
    StepUnderflow(f64),
    #[error("ill-conditioned linear system (rcond = {0:e})")]
    IllConditioned(f64),
    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(String),
    #[error("evaluation point {0} is at a singularity")]
    AtSingularity(String),
    #[error("y takes a critical value (0, 1 or x) at {0}")]
    CriticalValue(String),
    #[error("formal monodromy delta = {0} is resonant for this operation")]
    ResonantDelta(String),
    #[error("upper coefficient (psi_1)_+ vanishes: expansion is triangular")]
    TriangularExpansion,
    #[error("delta = {0} is not allowed here")]
    BadDelta(String),
    #[error("pole center {0} coincides with a fixed singularity")]
    BadCenter(String),
    #[error("leading coefficient of the double-pole jet is zero")]
    ZeroLeading,
    #[error("order-{0} recursion coefficient vanishes")]
    RecursionSingular(i32),
    #[error("gauge matrix is singular at {0}")]
    GaugeSingular(String),
    #[error("variant mismatch: {0}")]
    VariantMismatch(String),
    #[error("local exponent at singularity {0} is resonant")]
    ResonantExponent(usize),
    #[error("asymptotic normalisation failed: {0}")]
    NormalizationFailure(String),
    #[error("unsupported loop geometry: {0}")]
    BadGeometry(String),
    #[error("exponent condition violated: {0}")]
    ResonantAlpha(String),
    #[error("point {0} lies on a cut endpoint")]
    OnCutEndpoint(String),
    #[error("Hankel determinant of order {0} vanishes: problem not solvable")]
    NotSolvable(usize),
    #[error("degenerate Hankel data: {0}")]
    DegenerateHankel(String),
    #[error("no root of the Hankel determinant found in the search region")]
    NoRootInRegion,
    #[error("data is not at a Heun-polynomial locus: {0}")]
    NotAtLocus(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

impl HeunError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        use HeunError::*;
        match self {
            InvalidExponent(_) => "invalid_exponent",
            NonConvergence(_) => "non_convergence",
            SingularityHit(_) => "singularity_hit",
            StepUnderflow(_) => "step_underflow",
            IllConditioned(_) => "ill_conditioned",
            DegenerateDenominator(_) => "degenerate_denominator",
            AtSingularity(_) => "at_singularity",
            CriticalValue(_) => "critical_value",
            ResonantDelta(_) => "resonant_delta",
            TriangularExpansion => "triangular_expansion",
            BadDelta(_) => "bad_delta",
            BadCenter(_) => "bad_center",
            ZeroLeading => "zero_leading",
            RecursionSingular(_) => "recursion_singular",
            GaugeSingular(_) => "gauge_singular",
            VariantMismatch(_) => "variant_mismatch",
            ResonantExponent(_) => "resonant_exponent",
            NormalizationFailure(_) => "normalization_failure",
            BadGeometry(_) => "bad_geometry",
            ResonantAlpha(_) => "resonant_alpha",
            OnCutEndpoint(_) => "on_cut_endpoint",
            NotSolvable(_) => "not_solvable",
            DegenerateHankel(_) => "degenerate_hankel",
            NoRootInRegion => "no_root_in_region",
            NotAtLocus(_) => "not_at_locus",
            ConfigInvalid(_) => "config_invalid",
            InvalidParameters(_) => "invalid_parameters",
        }
    }

    /// True for errors caused by inputs that violate a precondition.
    pub fn is_validation(&self) -> bool {
        use HeunError::*;
        matches!(
            self,
            InvalidExponent(_)
                | BadDelta(_)
                | BadCenter(_)
                | ZeroLeading
                | VariantMismatch(_)
                | BadGeometry(_)
                | ResonantAlpha(_)
                | OnCutEndpoint(_)
                | AtSingularity(_)
                | ConfigInvalid(_)
                | InvalidParameters(_)
                | ResonantDelta(_)
                | ResonantExponent(_)
        )
    }

    /// Process exit code: 2 for validation failures, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        if self.is_validation() {
            2
        } else {
            3
        }
    }
}

pub type Result<T> = std::result::Result<T, HeunError>;
