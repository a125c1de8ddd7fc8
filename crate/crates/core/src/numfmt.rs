//! Fixed-precision rendering of probabilities for exports and API bodies.

use serde::Serializer;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Round to [`SIGNIFICANT_DIGITS`] significant decimal digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Text form of [`round_sig`]: plain decimal for ordinary magnitudes,
/// exponent notation below `1e-4` so tiny residues stay short.
pub fn format_sig(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        "0".to_string()
    } else if r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// `serialize_with` adapter applying [`round_sig`].
pub fn serialize_sig<S: Serializer>(x: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_f64(round_sig(*x))
}

pub fn serialize_sig_array<S: Serializer, const N: usize>(
    xs: &[f64; N],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut tup = serializer.serialize_tuple(N)?;
    for x in xs {
        tup.serialize_element(&round_sig(*x))?;
    }
    tup.end()
}
