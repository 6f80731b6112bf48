//! Support code for the `entroscope` binary.

pub mod document;
pub mod svg;

pub use document::{parse_rational, MapDocument, Metadata};

/// Environment variable overriding the breakpoint cap for iterates.
pub const CAP_ENV: &str = "ENTROSCOPE_BREAKPOINT_CAP";

/// Reads [`CAP_ENV`], if set.
pub fn breakpoint_cap_from_env() -> anyhow::Result<Option<usize>> {
    match std::env::var(CAP_ENV) {
        Ok(v) => {
            let cap: usize = v
                .trim()
                .parse()
                .map_err(|_| anyhow::anyhow!("{CAP_ENV} must be a positive integer, got {v:?}"))?;
            anyhow::ensure!(cap > 0, "{CAP_ENV} must be positive");
            Ok(Some(cap))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(anyhow::anyhow!("{CAP_ENV}: {e}")),
    }
}
