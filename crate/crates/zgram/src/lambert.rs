//! Principal branch of the Lambert W function, used for the initial guess of
//! the node solver (inverting the main term of the phase function).

/// W0(x) for x > -1/e, by Halley iteration.
pub fn lambert_w0(x: f64) -> f64 {
    assert!(x > -std::f64::consts::E.recip(), "lambert_w0 domain: {x}");
    // ln(1+x) is a serviceable start on the whole branch; for large x switch
    // to the asymptotic ln x - ln ln x.
    let mut w = if x > std::f64::consts::E {
        x.ln() - x.ln().ln()
    } else {
        x.ln_1p()
    };
    for _ in 0..40 {
        let ew = w.exp();
        let f = w * ew - x;
        let denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        let dw = f / denom;
        w -= dw;
        if dw.abs() <= 1e-14 * w.abs().max(1e-3) {
            break;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_points() {
        assert!((lambert_w0(1.0) - 0.5671432904097838).abs() < 1e-14);
        assert!((lambert_w0(std::f64::consts::E) - 1.0).abs() < 1e-14);
        assert!(lambert_w0(0.0).abs() < 1e-300);
    }

    #[test]
    fn defining_equation_round_trip() {
        for &x in &[
            -0.25,
            -0.046,
            0.1,
            0.875 / std::f64::consts::E,
            3.0,
            1e3,
            3.7e5,
        ] {
            let w = lambert_w0(x);
            assert!(
                (w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1.0),
                "x = {x}"
            );
        }
    }
}
