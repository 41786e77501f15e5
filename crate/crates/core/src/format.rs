//! Number formatting shared by the JSON and CSV writers.

use serde::Serializer;

/// Rounds to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round_sig12(*x))
    } else {
        s.serialize_none()
    }
}

pub fn opt_sig12<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => sig12(x, s),
        None => s.serialize_none(),
    }
}

/// Four decimals, as in the reference tables; `n/a` when undefined.
pub fn table_float(x: Option<f64>) -> String {
    match x {
        Some(x) => format!("{x:.4}"),
        None => "n/a".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig12(0.999_999_999_999_98), 1.0);
        assert_eq!(round_sig12(0.19806226419516), 0.198062264195);
        assert_eq!(round_sig12(0.0), 0.0);
        assert_eq!(table_float(Some(0.46791)), "0.4679");
        assert_eq!(table_float(None), "n/a");
    }
}
