use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::codes::{
    content_lines, is_minimal, minimal_codewords, minimal_codewords_oracle, parse_row, LinearCode, ORACLE_MAX_K,
};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Exhaustive,
    Heuristic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Heuristic => "heuristic",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "heuristic" => Ok(Method::Heuristic),
            other => Err(Error::BadParameter(format!("unknown search method {other:?}"))),
        }
    }
}

/// A generator matrix together with the `M` value it is claimed to reach.
///
/// `method = Exhaustive` additionally claims that no `[n, k]` code does
/// better. Wall time is informational and not part of the file format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCertificate {
    pub n: usize,
    pub k: usize,
    pub generator: BitMatrix,
    pub claimed_m: u64,
    pub method: Method,
    pub candidates_examined: u64,
    pub seed: u64,
    pub wall_time: Duration,
}

impl SearchCertificate {
    /// Text form: `n k claimed_m method seed candidates_examined`, then the
    /// `k` generator rows.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {} {} {}\n",
            self.n, self.k, self.claimed_m, self.method, self.seed, self.candidates_examined
        );
        for row in self.generator.iter_rows() {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<SearchCertificate> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| Error::parse(1, "empty certificate"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(Error::parse(
                line_no,
                "expected \"n k claimed_m method seed candidates_examined\"",
            ));
        }
        let int = |i: usize| -> Result<u64> {
            fields[i]
                .parse::<u64>()
                .map_err(|_| Error::parse(line_no, format!("not an integer: {:?}", fields[i])))
        };
        let n = int(0)? as usize;
        let k = int(1)? as usize;
        let claimed_m = int(2)?;
        let method = fields[3]
            .parse::<Method>()
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let seed = int(4)?;
        let candidates_examined = int(5)?;
        if n == 0 || n > 64 || k == 0 || k > n {
            return Err(Error::parse(line_no, format!("invalid parameters [{n},{k}]")));
        }
        let mut rows = Vec::with_capacity(k);
        for (line_no, line) in lines {
            if rows.len() == k {
                return Err(Error::parse(line_no, "more generator rows than k"));
            }
            rows.push(parse_row(line_no, line, n)?);
        }
        if rows.len() != k {
            return Err(Error::parse(
                0,
                format!("expected {k} generator rows, found {}", rows.len()),
            ));
        }
        let generator = BitMatrix::from_rows(n, rows).map_err(|e| Error::parse(0, e.to_string()))?;
        Ok(SearchCertificate {
            n,
            k,
            generator,
            claimed_m,
            method,
            candidates_examined,
            seed,
            wall_time: Duration::ZERO,
        })
    }

    pub fn code(&self) -> Result<LinearCode> {
        LinearCode::new(self.generator.clone())
    }
}

/// Rebuilds the code and recomputes `M` twice: with the sieve, and with the
/// pairwise oracle (or, above the oracle's size limit, the per-word rank
/// test). Both must equal the claim.
pub fn verify_certificate(cert: &SearchCertificate) -> bool {
    let Ok(code) = cert.code() else {
        return false;
    };
    if code.n() != cert.n || code.k() != cert.k {
        return false;
    }
    let sieve = minimal_codewords(&code).count() as u64;
    let second = if code.k() <= ORACLE_MAX_K {
        match minimal_codewords_oracle(&code) {
            Ok(set) => set.count() as u64,
            Err(_) => return false,
        }
    } else {
        code.codewords()
            .skip(1)
            .filter(|c| is_minimal(&code, &c.vector()).unwrap_or(false))
            .count() as u64
    };
    sieve == cert.claimed_m && second == cert.claimed_m
}
