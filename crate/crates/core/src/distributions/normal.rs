//! Standard normal quantile, Wichura's AS 241 (PPND16).
//!
//! Relative accuracy is about 1e-16 over the full open unit interval, so no
//! Newton refinement against the CDF is applied.

#![allow(clippy::excessive_precision)]

use crate::scalar::{lit, Real};

const A: [f64; 8] = [
    3.387_132_872_796_366_608,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
const B: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561e3,
];
const C: [f64; 8] = [
    1.423_437_110_749_683_577_34,
    4.630_337_846_156_545_295_9,
    5.769_497_221_460_691_405_5,
    3.647_848_324_763_204_605_04,
    1.270_458_252_452_368_382_58,
    2.417_807_251_774_506_117_7e-1,
    2.272_384_498_926_918_458_33e-2,
    7.745_450_142_783_414_076_4e-4,
];
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_87,
    1.676_384_830_183_803_849_4,
    6.897_673_349_851_000_045_5e-1,
    1.481_039_764_274_800_745_9e-1,
    1.519_866_656_361_645_719_66e-2,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_24e-9,
];
const E: [f64; 8] = [
    6.657_904_643_501_103_777_2,
    5.463_784_911_164_114_369_9,
    1.784_826_539_917_291_335_8,
    2.965_605_718_285_048_912_3e-1,
    2.653_218_952_657_612_309_3e-2,
    1.242_660_947_388_078_438_6e-3,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const F: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_376_9e-1,
    1.369_298_809_227_358_053_1e-1,
    1.487_536_129_085_061_485_25e-2,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_64e-15,
];

fn horner<T: Real>(coeffs: &[f64; 8], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + lit(c))
}

/// `Φ⁻¹(u)` given `u` and its complement `v = 1 − u`.
pub(crate) fn normal_quantile<T: Real>(u: T, v: T) -> T {
    let half = lit::<T>(0.5);
    let q = if u < half { u - half } else { half - v };
    if q.abs() <= lit(0.425) {
        let r = lit::<T>(0.180_625) - q * q;
        return q * horner(&A, r) / horner(&B, r);
    }
    let tail = if q < T::zero() { u } else { v };
    let mut r = (-tail.ln()).sqrt();
    let magnitude = if r <= lit(5.0) {
        r = r - lit(1.6);
        horner(&C, r) / horner(&D, r)
    } else {
        r = r - lit(5.0);
        horner(&E, r) / horner(&F, r)
    };
    if q < T::zero() {
        -magnitude
    } else {
        magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn q(u: f64) -> f64 {
        normal_quantile(u, 1.0 - u)
    }

    // Reference values from a 40-digit evaluation of √2·erf⁻¹(2u − 1).
    #[test]
    fn matches_high_precision_reference() {
        assert_relative_eq!(q(0.975), 1.959_963_984_540_054_2, max_relative = 1e-15);
        assert_relative_eq!(q(0.1), -1.281_551_565_544_600_5, max_relative = 1e-15);
        assert_relative_eq!(q(0.9), 1.281_551_565_544_600_5, max_relative = 1e-15);
        assert_relative_eq!(q(1e-10), -6.361_340_902_404_056, max_relative = 1e-15);
        assert_relative_eq!(
            normal_quantile(1.0 - 1e-10, 1e-10),
            6.361_340_902_404_056,
            max_relative = 1e-15
        );
        assert_eq!(q(0.5), 0.0);
    }

    #[test]
    fn complement_argument_is_used_in_upper_tail() {
        // u = 1 − 1e-300 is not representable; the complement carries it.
        let hi: f64 = normal_quantile(1.0, 1e-300);
        let lo = normal_quantile(1e-300, 1.0);
        assert!(hi.is_finite() && hi > 37.0);
        assert_eq!(hi, -lo);
    }
}
