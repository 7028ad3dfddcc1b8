use super::stirling_remainder;
use crate::error::{Error, Result};

/// `ln Pr[|T| = t]` for the total progeny of a Poisson(`mu`) Galton-Watson
/// tree: `t^{t-1} (mu e^{-mu})^t / (mu t!)`.
pub fn borel_log_pmf(mu: f64, t: u64) -> Result<f64> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::Domain(format!("mu = {mu} must lie in (0, 1)")));
    }
    if t == 0 {
        return Err(Error::Domain("the Borel law lives on t >= 1".into()));
    }
    let tf = t as f64;
    // t ln mu - t mu + t = t (ln(1 - d) + d) with d = 1 - mu, kept accurate
    // for mu near 1.
    let d = 1.0 - mu;
    let drift = tf * ((-d).ln_1p() + d);
    // ln t! = t ln t - t + ln(2 pi t)/2 + r(t); the t ln t terms cancel.
    Ok(drift
        - tf.ln()
        - mu.ln()
        - 0.5 * (2.0 * std::f64::consts::PI * tf).ln()
        - stirling_remainder(tf))
}

pub fn borel_pmf(mu: f64, t: u64) -> Result<f64> {
    borel_log_pmf(mu, t).map(f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    // 50-digit reference evaluations of the closed form, kept verbatim.
    #[allow(clippy::excessive_precision)]
    const REFERENCE: &[(f64, u64, f64)] = &[
        (0.9061, 1, 0.404_097_133_687_529_760_27),
        (0.9061, 2, 0.147_961_140_519_101_883_71),
        (0.9061, 7, 0.022_730_808_108_129_360_318),
        (0.9061, 19, 0.004_840_276_509_721_245_425),
        (0.9061, 20, 0.004_461_769_982_760_316_065_5),
        (0.9061, 21, 0.004_128_247_818_345_479_614_7),
        (0.9061, 100, 2.747_959_008_982_047_707e-4),
        (0.9061, 1000, 1.259_157_335_124_416_506_3e-7),
        (0.9061, 5000, 7.536_730_196_699_982_058_5e-17),
        (0.5, 3, 0.083_673_810_055_661_185_85),
        (0.5, 40, 1.388_785_343_916_191_943_3e-6),
        (0.99, 10_000, 2.435_933_443_171_317_895_6e-7),
        (0.99, 100_000, 8.302_639_237_262_118_078e-11),
    ];

    #[test]
    fn matches_high_precision_reference() {
        for &(mu, t, want) in REFERENCE {
            let got = borel_pmf(mu, t).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-12,
                "mu={mu} t={t}: {got:e} vs {want:e}"
            );
        }
    }

    #[test]
    fn small_t_closed_forms() {
        let mu: f64 = 0.37;
        assert!((borel_pmf(mu, 1).unwrap() - (-mu).exp()).abs() < 1e-15);
        assert!((borel_pmf(mu, 2).unwrap() - mu * (-2.0 * mu).exp()).abs() < 1e-15);
    }

    #[test]
    fn domain() {
        assert!(borel_pmf(0.0, 1).is_err());
        assert!(borel_pmf(1.0, 1).is_err());
        assert!(borel_pmf(0.5, 0).is_err());
    }
}
