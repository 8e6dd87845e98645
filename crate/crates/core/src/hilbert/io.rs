use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// TOML matrix document. Each entry is `[re, im]`, where a component is an
/// integer, a fraction `a/b` or a decimal `1.25`.
///
/// ```toml
/// dim = 2
/// mode = "exact"
/// entries = [[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]]
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub mode: Mode,
    pub entries: Vec<Vec<[String; 2]>>,
}

/// Parse a component exactly. Decimals are converted digit by digit, so
/// "0.1" is exactly 1/10.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Input(format!("bad number `{s}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigRational::from_integer(10.into());
    let mut r = BigRational::from_integer(digits);
    let p = num_traits::pow(ten, scale.unsigned_abs() as usize);
    r = if scale >= 0 { r * p } else { r / p };
    Ok(if neg { -r } else { r })
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<MatrixFile> {
        toml::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("matrix file serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<MatrixFile> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    pub fn to_matrix<T: Scalar>(&self) -> Result<ComplexMatrix<T>> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Input(format!("expected a {0}x{0} entry grid", self.dim)));
        }
        if self.mode == Mode::Float && T::EXACT {
            return Err(Error::Input("float matrix read in exact mode".into()));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|[re, im]| {
                        Ok(Complex::new(T::from_rational(&parse_rational(re)?), T::from_rational(&parse_rational(im)?)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ComplexMatrix::from_rows(rows)
    }

    pub fn from_matrix<T: Scalar>(m: &ComplexMatrix<T>) -> Result<MatrixFile> {
        if !m.is_square() {
            return Err(Error::Dimension(m.rows(), m.cols()));
        }
        let entries = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re.to_string(), m[(i, j)].im.to_string()]).collect())
            .collect();
        Ok(MatrixFile { dim: m.dim(), mode: if T::EXACT { Mode::Exact } else { Mode::Float }, entries })
    }
}

/// Exact unit phase from a rational pair, checked.
pub fn exact_phase(re: &str, im: &str) -> Result<Complex<BigRational>> {
    let w = Complex::new(parse_rational(re)?, parse_rational(im)?);
    if w.norm_sqr() != BigRational::one() {
        return Err(Error::Precondition("phase is not a unit complex number".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("1.5e2").unwrap(), q(150, 1));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn round_trip() {
        let text = "dim = 2\nmode = \"exact\"\nentries = [[[\"1/2\", \"0\"], [\"1/2\", \"0\"]], [[\"1/2\", \"0\"], [\"1/2\", \"0\"]]]\n";
        let f = MatrixFile::parse(text).unwrap();
        let m: ComplexMatrix<BigRational> = f.to_matrix().unwrap();
        let back = MatrixFile::from_matrix(&m).unwrap();
        assert_eq!(back.to_matrix::<BigRational>().unwrap(), m);
        let mf: ComplexMatrix<f64> = f.to_matrix().unwrap();
        assert!((mf[(0, 1)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn float_file_refused_in_exact_mode() {
        let f = MatrixFile { dim: 1, mode: Mode::Float, entries: vec![vec![["0.5".into(), "0".into()]]] };
        assert!(f.to_matrix::<BigRational>().is_err());
        assert!(f.to_matrix::<f64>().is_ok());
        assert!(exact_phase("3/5", "4/5").is_ok());
        assert!(exact_phase("1/2", "1/2").is_err());
    }
}
