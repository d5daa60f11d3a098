use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Tolerance on the total mass accepted before normalization.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A law with finitely many atoms.
///
/// Atom values are strictly increasing and every probability is positive.
/// The stored probabilities are normalized to sum to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteDiscrete<T> {
    atoms: Vec<(T, T)>,
    /// `F(x_j)`, with the last entry pinned to exactly one.
    cumulative: Vec<T>,
    /// `1 − F(x_j)` accumulated from the right.
    upper_tail: Vec<T>,
}

impl<T: Real> FiniteDiscrete<T> {
    /// Builds a law from `(value, probability)` pairs in any order.
    pub fn new(mut atoms: Vec<(T, T)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("no atoms".into()));
        }
        for &(x, p) in &atoms {
            if !x.is_finite() {
                return Err(Error::InvalidDistribution(format!("non-finite atom value {x}")));
            }
            if !(p.is_finite() && p > T::zero()) {
                return Err(Error::InvalidDistribution(format!(
                    "probability {p} at atom {x} is not strictly positive"
                )));
            }
        }
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite values"));
        if let Some(w) = atoms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidDistribution(format!("duplicate atom value {}", w[0].0)));
        }
        let total: T = atoms.iter().map(|a| a.1).sum();
        if (total - T::one()).abs() > lit(MASS_TOLERANCE) {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        for a in &mut atoms {
            a.1 = a.1 / total;
        }

        let mut cumulative = Vec::with_capacity(atoms.len());
        let mut acc = T::zero();
        for &(_, p) in &atoms {
            acc = acc + p;
            cumulative.push(acc);
        }
        *cumulative.last_mut().unwrap() = T::one();

        let mut upper_tail = vec![T::zero(); atoms.len()];
        let mut acc = T::zero();
        for j in (0..atoms.len()).rev() {
            upper_tail[j] = acc;
            acc = acc + atoms[j].1;
        }

        Ok(Self {
            atoms,
            cumulative,
            upper_tail,
        })
    }

    /// Degenerate law at `value`.
    pub fn point_mass(value: T) -> Result<Self> {
        Self::new(vec![(value, T::one())])
    }

    pub fn atoms(&self) -> &[(T, T)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `F(x_j)` for each atom.
    pub fn cumulative(&self) -> &[T] {
        &self.cumulative
    }

    /// `1 − F(x_j)` for each atom, accumulated without subtraction.
    pub fn upper_tail(&self) -> &[T] {
        &self.upper_tail
    }

    /// `F(0) = P(X ≤ 0)`.
    pub fn cdf_at_zero(&self) -> T {
        let idx = self.atoms.partition_point(|a| a.0 <= T::zero());
        if idx == 0 {
            T::zero()
        } else {
            self.cumulative[idx - 1]
        }
    }

    pub fn abs_moment(&self, delta: T) -> T {
        self.atoms.iter().map(|&(x, p)| p * x.abs().powf(delta)).sum()
    }

    /// Index of the atom returned by `inf{x : F(x) ≥ u}`.
    pub(crate) fn quantile_index(&self, u: T) -> usize {
        self.cumulative.partition_point(|&c| c < u).min(self.atoms.len() - 1)
    }

    pub(crate) fn quantile_unchecked(&self, u: T) -> T {
        self.atoms[self.quantile_index(u)].0
    }

    /// Parses the `value probability` per line text format. `#` starts a
    /// comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self>
    where
        T: FromStr,
    {
        let mut atoms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `value probability`, found {} fields", fields.len()),
                });
            }
            let parse = |s: &str, what: &str| {
                s.parse::<T>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("invalid {what} `{s}`"),
                })
            };
            atoms.push((parse(fields[0], "value")?, parse(fields[1], "probability")?));
        }
        Self::new(atoms).map_err(|e| match e {
            Error::InvalidDistribution(message) => Error::Parse { line: 0, message },
            other => other,
        })
    }
}

/// `F⁻¹(u) = inf{x : F(x) ≥ u}` for a finite law. Ties (u equal to a
/// cumulative mass) return the attaining atom.
pub fn quantile_of_finite<T: Real>(d: &FiniteDiscrete<T>, u: T) -> Result<T> {
    if !(u > T::zero() && u < T::one()) {
        return Err(Error::Domain(format!("quantile level {u} outside (0, 1)")));
    }
    Ok(d.quantile_unchecked(u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point() -> FiniteDiscrete<f64> {
        FiniteDiscrete::new(vec![(0.0, 0.5), (1.0, 0.5)]).unwrap()
    }

    #[test]
    fn quantile_examples() {
        let d = two_point();
        assert_eq!(quantile_of_finite(&d, 0.5).unwrap(), 0.0);
        assert_eq!(quantile_of_finite(&d, 0.75).unwrap(), 1.0);
        let d = FiniteDiscrete::new(vec![(-2.0, 0.25), (0.0, 0.5), (3.0, 0.25)]).unwrap();
        assert_eq!(quantile_of_finite(&d, 0.8).unwrap(), 3.0);
        assert_eq!(quantile_of_finite(&d, 0.25).unwrap(), -2.0);
        assert_eq!(quantile_of_finite(&d, 0.250001).unwrap(), 0.0);
    }

    #[test]
    fn quantile_rejects_out_of_range() {
        let d = two_point();
        for u in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(quantile_of_finite(&d, u), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn construction_validates_atoms() {
        assert!(FiniteDiscrete::<f64>::new(vec![]).is_err());
        assert!(FiniteDiscrete::new(vec![(1.0, 0.5), (1.0, 0.5)]).is_err());
        assert!(FiniteDiscrete::new(vec![(0.0, 0.0), (1.0, 1.0)]).is_err());
        assert!(FiniteDiscrete::new(vec![(0.0, 0.5), (1.0, 0.4)]).is_err());
        let d = FiniteDiscrete::new(vec![(3.0, 0.5), (-1.0, 0.5 + 5e-10)]).unwrap();
        assert_eq!(d.atoms()[0].0, -1.0);
        assert!((d.atoms().iter().map(|a| a.1).sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(*d.cumulative().last().unwrap(), 1.0);
    }

    #[test]
    fn cdf_at_zero_counts_atom_at_zero() {
        let d = FiniteDiscrete::new(vec![(-2.0, 0.25), (0.0, 0.5), (3.0, 0.25)]).unwrap();
        assert_eq!(d.cdf_at_zero(), 0.75);
        let d = FiniteDiscrete::new(vec![(1.0, 1.0)]).unwrap();
        assert_eq!(d.cdf_at_zero(), 0.0);
    }

    #[test]
    fn parses_text_format() {
        let text = "# a comment\n-1 0.25\n\n 2.5   0.75 # trailing\n";
        let d: FiniteDiscrete<f64> = FiniteDiscrete::parse(text).unwrap();
        assert_eq!(d.atoms(), &[(-1.0, 0.25), (2.5, 0.75)]);

        let near = "0 0.3333333333\n1 0.6666666667\n";
        let d: FiniteDiscrete<f64> = FiniteDiscrete::parse(near).unwrap();
        assert!((d.atoms()[0].1 + d.atoms()[1].1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parse_errors_report_line() {
        let err = FiniteDiscrete::<f64>::parse("0 0.5\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = FiniteDiscrete::<f64>::parse("0 0.5 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = FiniteDiscrete::<f64>::parse("0 0.5\n1 0.49\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}
