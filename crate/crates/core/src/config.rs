/// Environment variable overriding the global degree cap.
pub const DEGREE_CAP_VAR: &str = "YMALG_DEGREE_CAP";

pub const DEFAULT_DEGREE_CAP: usize = 10;

/// Largest degree any construction accepts.
pub fn degree_cap() -> usize {
    std::env::var(DEGREE_CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}
