//! Finite fields F_{p^m}, polynomials over them, subfields and embeddings.

mod embed;
mod field;
mod mpoly;
mod poly;
mod subfield;
pub(crate) mod zp;

pub use embed::Embedding;
pub use field::{Fe, FieldCtx, FieldId, MAX_DEGREE};
pub use mpoly::{determinant, sylvester_resultant, MPoly, MAX_VARS, MAX_VAR_DEGREE};
pub use poly::Poly;
pub use subfield::Subfield;
pub use zp::{is_prime, prime_factors, prime_power};

use crate::error::{Error, Result};

/// Parses a field spec such as "5^3", "25" or "7".
pub fn parse_field_spec(s: &str) -> Result<(u64, u32)> {
    let bad = || Error::InvalidParameters(alloc::format!("bad field spec {s:?}"));
    let (p, k) = match s.split_once('^') {
        Some((a, b)) => {
            let p: u64 = a.trim().parse().map_err(|_| bad())?;
            let k: u32 = b.trim().parse().map_err(|_| bad())?;
            if !is_prime(p) {
                return Err(Error::CompositeCharacteristic(p));
            }
            (p, k)
        }
        None => {
            let n: u64 = s.trim().parse().map_err(|_| bad())?;
            prime_power(n).ok_or(Error::CompositeCharacteristic(n))?
        }
    };
    if k == 0 {
        return Err(bad());
    }
    Ok((p, k))
}
