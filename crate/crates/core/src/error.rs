use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode index {mode} out of range for {modes} modes")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("dimension mismatch: expected {expected} modes, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Vacuum input. The field operator annihilates it, so it is trivially dark.
    #[error("vacuum state has no photons to couple (trivially dark)")]
    Vacuum,

    #[error("Hadamard basis needs a power-of-two mode count, got {modes}; use the DFT basis instead")]
    UnsupportedBasis { modes: usize },

    #[error("state is outside the single-photon sector (found a term with {photons} photons)")]
    Sector { photons: u32 },

    #[error("photon cutoff {cap} too small: tail tolerance needs N_max = {required}")]
    Cutoff { required: u32, cap: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("enumeration over {modes} modes exceeds the bound of {limit}")]
    Resource { modes: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    Configuration(String),

    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
