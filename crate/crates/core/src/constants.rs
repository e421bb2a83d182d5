//! Physical constants. Every time/energy conversion in the crate goes through
//! [`HBAR`].

/// Reduced Planck constant in μeV·ns.
pub const HBAR: f64 = 0.658_211_956_9;

/// Couplings below this magnitude (μeV) are treated as switched off.
pub const MIN_COUPLING: f64 = 1e-15;

/// `(name, value, unit)` rows, printed by the CLI `--version` flag.
pub const TABLE: &[(&str, f64, &str)] = &[
    ("hbar", HBAR, "ueV*ns"),
    ("min_coupling", MIN_COUPLING, "ueV"),
];
