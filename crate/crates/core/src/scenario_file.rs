//! Line-delimited scenario files: one `field: value` per line, `#` comments,
//! nested integer lists for matrices.
//!
//! Fields: `n` (level), `d` (dimension), `t` (iteration depth, default 0),
//! `gamma` (2d x 2d row-major nested list), `pairing` (`standard` or a
//! matrix), `model` (`principal` or `dual-pair`), `gammaXstar` (dual-pair
//! only), `p` (optional residue characteristic, validated against n).

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::linalg::IntMatrix;
use crate::torsion::{standard_symplectic_form, TorsionPairData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairingSpec {
    Standard,
    Explicit(IntMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    Principal,
    DualPair,
}

#[derive(Debug, Clone)]
pub struct ScenarioFile {
    pub n: u64,
    pub d: usize,
    pub t: u32,
    pub gamma: IntMatrix,
    pub pairing: PairingSpec,
    pub model: ModelSpec,
    pub gamma_x_star: Option<IntMatrix>,
    pub residue_char: Option<u64>,
}

fn scenario_err(line: usize, message: impl Into<String>) -> Error {
    Error::Scenario { line, message: message.into() }
}

/// Parse a nested integer list like [[1, 0], [0, 1]] into a square matrix.
fn parse_matrix(line: usize, s: &str) -> Result<IntMatrix, Error> {
    let s = s.trim();
    if !s.starts_with('[') || !s.ends_with(']') {
        return Err(scenario_err(line, "matrix must be a nested list [[..], ..]"));
    }
    let inner = &s[1..s.len() - 1];
    // split top-level rows
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut depth = 0usize;
    let mut start = None;
    for (i, c) in inner.char_indices() {
        match c {
            '[' => {
                if depth == 0 {
                    start = Some(i + 1);
                }
                depth += 1;
            }
            ']' => {
                if depth == 0 {
                    return Err(scenario_err(line, "unbalanced brackets"));
                }
                depth -= 1;
                if depth == 0 {
                    let row_src = &inner[start.take().unwrap()..i];
                    let mut row = Vec::new();
                    for tok in row_src.split(',') {
                        let tok = tok.trim();
                        if tok.is_empty() {
                            continue;
                        }
                        let v: BigInt = tok
                            .parse()
                            .map_err(|_| scenario_err(line, format!("bad integer '{tok}'")))?;
                        row.push(v);
                    }
                    rows.push(row);
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(scenario_err(line, "unbalanced brackets"));
    }
    if rows.is_empty() {
        return Err(scenario_err(line, "empty matrix"));
    }
    let cols = rows[0].len();
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(scenario_err(line, "ragged or empty matrix rows"));
    }
    let mut m = IntMatrix::zero(rows.len(), cols);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, v) in r.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<ScenarioFile, Error> {
        let mut n = None;
        let mut d = None;
        let mut t = 0u32;
        let mut gamma = None;
        let mut pairing = PairingSpec::Standard;
        let mut model = ModelSpec::Principal;
        let mut gamma_x_star = None;
        let mut residue_char = None;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (field, value) = line
                .split_once(':')
                .ok_or_else(|| scenario_err(lineno, "expected 'field: value'"))?;
            let value = value.trim();
            match field.trim() {
                "n" => {
                    n = Some(value.parse::<u64>().map_err(|_| {
                        scenario_err(lineno, format!("field n: bad integer '{value}'"))
                    })?)
                }
                "d" => {
                    d = Some(value.parse::<usize>().map_err(|_| {
                        scenario_err(lineno, format!("field d: bad integer '{value}'"))
                    })?)
                }
                "t" => {
                    t = value.parse::<u32>().map_err(|_| {
                        scenario_err(lineno, format!("field t: bad integer '{value}'"))
                    })?
                }
                "gamma" => gamma = Some(parse_matrix(lineno, value)?),
                "pairing" => {
                    pairing = if value == "standard" {
                        PairingSpec::Standard
                    } else {
                        PairingSpec::Explicit(parse_matrix(lineno, value)?)
                    }
                }
                "model" => {
                    model = match value {
                        "principal" => ModelSpec::Principal,
                        "dual-pair" => ModelSpec::DualPair,
                        other => {
                            return Err(scenario_err(
                                lineno,
                                format!("field model: expected 'principal' or 'dual-pair', got '{other}'"),
                            ))
                        }
                    }
                }
                "gammaXstar" => gamma_x_star = Some(parse_matrix(lineno, value)?),
                "p" => {
                    residue_char = Some(value.parse::<u64>().map_err(|_| {
                        scenario_err(lineno, format!("field p: bad integer '{value}'"))
                    })?)
                }
                other => {
                    return Err(scenario_err(lineno, format!("unknown field '{other}'")));
                }
            }
        }

        let n = n.ok_or_else(|| scenario_err(0, "missing field 'n'"))?;
        let gamma = gamma.ok_or_else(|| scenario_err(0, "missing field 'gamma'"))?;
        if !gamma.is_square() {
            return Err(scenario_err(0, "gamma must be square"));
        }
        let d = match d {
            Some(d) => d,
            None => {
                if gamma.rows % 2 != 0 {
                    return Err(scenario_err(0, "gamma has odd dimension and no 'd' given"));
                }
                gamma.rows / 2
            }
        };
        if gamma.rows != 2 * d {
            return Err(scenario_err(0, format!("gamma must be {0}x{0} for d = {d}", 2 * d)));
        }
        if n < 2 {
            return Err(scenario_err(0, "n must be at least 2"));
        }
        if let Some(p) = residue_char {
            if p == 0 || n % p == 0 {
                return Err(scenario_err(
                    0,
                    format!("residue characteristic p = {p} must not divide n = {n}"),
                ));
            }
        }
        if model == ModelSpec::Principal && gamma_x_star.is_some() {
            return Err(scenario_err(0, "gammaXstar is only valid with model: dual-pair"));
        }
        Ok(ScenarioFile { n, d, t, gamma, pairing, model, gamma_x_star, residue_char })
    }

    pub fn load(path: &std::path::Path) -> Result<ScenarioFile, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Validate and build the torsion pair this scenario describes.
    pub fn to_pair(&self) -> Result<TorsionPairData, Error> {
        let nb = BigInt::from(self.n);
        let gamma = self.gamma.reduce_mod(&nb);
        if self.model == ModelSpec::Principal && self.pairing == PairingSpec::Standard {
            return TorsionPairData::standard_principal(self.n, self.d, gamma);
        }
        let pairing = match &self.pairing {
            PairingSpec::Standard => standard_symplectic_form(self.d),
            PairingSpec::Explicit(e) => e.clone(),
        };
        // the dual action is determined by pairing invariance when not given:
        // gamma^T E gamma* = E forces gamma* = (gamma^T E)^-1 E mod n
        let gamma_star = match &self.gamma_x_star {
            Some(g) => g.reduce_mod(&nb),
            None => {
                let lhs = gamma.transpose().mul(&pairing);
                inverse_mod(&lhs, &nb)?.mul(&pairing).reduce_mod(&nb)
            }
        };
        TorsionPairData::new(self.n, self.d, gamma, gamma_star, pairing)
    }
}

/// Inverse of an integer matrix mod n, via the adjugate and the modular
/// inverse of the determinant.
fn inverse_mod(m: &IntMatrix, nb: &BigInt) -> Result<IntMatrix, Error> {
    use num_integer::Integer;
    let det = m.det();
    let eg = det.extended_gcd(nb);
    if !eg.gcd.is_one() {
        return Err(Error::domain("matrix not invertible mod n"));
    }
    let det_inv = eg.x.mod_floor(nb);
    let adj = m
        .to_rat()
        .inverse()?
        .scalar_mul(&num_rational::BigRational::from(det))
        .to_int()
        .ok_or_else(|| Error::domain("adjugate not integral"))?;
    Ok(adj.scalar_mul(&det_inv).reduce_mod(nb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_scenario() {
        let s = ScenarioFile::parse(
            "# an identity scenario\nn: 3\nd: 1\ngamma: [[1, 0], [0, 1]]\npairing: standard\nmodel: principal\n",
        )
        .unwrap();
        assert_eq!(s.n, 3);
        assert_eq!(s.d, 1);
        assert_eq!(s.t, 0);
        assert!(s.to_pair().is_ok());
    }

    #[test]
    fn infers_d_and_defaults() {
        let s = ScenarioFile::parse("n: 4\ngamma: [[0, -1], [1, 0]]\n").unwrap();
        assert_eq!(s.d, 1);
        assert_eq!(s.pairing, PairingSpec::Standard);
        assert_eq!(s.model, ModelSpec::Principal);
    }

    #[test]
    fn reports_line_numbers() {
        let err = ScenarioFile::parse("n: 3\ngamma: [[1, x], [0, 1]]\n").unwrap_err();
        match err {
            Error::Scenario { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains('x'));
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn rejects_bad_fields_and_shapes() {
        assert!(ScenarioFile::parse("n: 3\nqq: 1\ngamma: [[1]]\n").is_err());
        assert!(ScenarioFile::parse("n: 3\ngamma: [[1, 0], [0]]\n").is_err());
        assert!(ScenarioFile::parse("n: 3\ngamma: [[1, 0, 0], [0, 1, 0], [0, 0, 1]]\n").is_err());
        assert!(ScenarioFile::parse("gamma: [[1, 0], [0, 1]]\n").is_err());
        // p dividing n is invalid metadata
        assert!(ScenarioFile::parse("n: 4\np: 2\ngamma: [[1, 0], [0, 1]]\n").is_err());
        assert!(ScenarioFile::parse("n: 3\np: 2\ngamma: [[1, 0], [0, 1]]\n").is_ok());
    }

    #[test]
    fn non_invertible_gamma_fails_validation() {
        let s = ScenarioFile::parse("n: 4\ngamma: [[2, 0], [0, 2]]\n").unwrap();
        assert!(s.to_pair().is_err());
    }

    #[test]
    fn dual_pair_model() {
        // gamma* forced by invariance for gamma = J is J itself at n = 4
        let s = ScenarioFile::parse(
            "n: 4\nmodel: dual-pair\ngamma: [[0, -1], [1, 0]]\ngammaXstar: [[0, 3], [1, 0]]\n",
        )
        .unwrap();
        assert!(s.to_pair().is_ok());
        // gammaXstar with principal model is rejected
        assert!(ScenarioFile::parse(
            "n: 4\nmodel: principal\ngamma: [[0, -1], [1, 0]]\ngammaXstar: [[0, 3], [1, 0]]\n"
        )
        .is_err());
    }
}
