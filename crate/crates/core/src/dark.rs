//! Counting dark states.
//!
//! With phases restricted to multiples of π, a single-photon state is dark
//! exactly when it has as many `+1` as `−1` weights. Up to a global sign there
//! are `M!/(2((M/2)!)²) = C(M, M/2)/2` such assignments for even `M` and none
//! for odd `M`. With locked linear phases only `M − 1` dark phases remain per
//! period, against a single bright one.

use std::f64::consts::TAU;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest mode count `enumerate_sign_states` will walk (2^M masks).
pub const ENUMERATION_LIMIT: usize = 24;

/// `C(M, M/2)/2`, exact.
pub fn count_pi_phase_dark(modes: usize) -> Result<BigUint> {
    if modes < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 modes, got {modes}")));
    }
    if modes % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "the closed-form count needs even M (got {modes}); enumerate_sign_states gives the exact odd-M answer"
        )));
    }
    let half = modes / 2;
    // C(M, k) built incrementally stays an integer at each step
    let mut c = BigUint::one();
    for i in 0..half {
        c *= BigUint::from(modes - i);
        c /= BigUint::from(i + 1);
    }
    Ok(c >> 1)
}

/// Sign vector with entries `±1`.
pub type SignVector = Vec<i8>;

fn check_enumerable(modes: usize) -> Result<()> {
    if modes == 0 {
        return Err(Error::InvalidInput("need at least 1 mode".into()));
    }
    if modes > ENUMERATION_LIMIT {
        return Err(Error::Resource {
            modes,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Masks over the last `M − 1` positions with exactly `M/2` bits set, visited
/// in increasing order by Gosper's hack. The first sign is pinned to `+1`.
fn for_each_balanced_mask(modes: usize, mut visit: impl FnMut(u32)) {
    if modes % 2 == 1 {
        return;
    }
    let free = modes - 1;
    let k = modes / 2;
    let end = 1u64 << free;
    let mut mask: u64 = (1u64 << k) - 1;
    while mask < end {
        visit(mask as u32);
        let lowest = mask & mask.wrapping_neg();
        let ripple = mask + lowest;
        mask = (((ripple ^ mask) >> 2) / lowest) | ripple;
    }
}

/// All `±1` vectors of length `M` summing to zero, one per global-sign pair.
pub fn enumerate_sign_states(modes: usize) -> Result<Vec<SignVector>> {
    check_enumerable(modes)?;
    let mut out = Vec::new();
    for_each_balanced_mask(modes, |mask| {
        let mut v = Vec::with_capacity(modes);
        v.push(1);
        v.extend((0..modes - 1).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }));
        out.push(v);
    });
    Ok(out)
}

/// Number of balanced sign vectors, without materializing them.
pub fn count_sign_states(modes: usize) -> Result<u64> {
    check_enumerable(modes)?;
    let mut n = 0u64;
    for_each_balanced_mask(modes, |_| n += 1);
    Ok(n)
}

/// `2πK/M` for `K = 1..M`.
pub fn locked_dark_phases(modes: usize) -> Result<Vec<f64>> {
    if modes < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 modes, got {modes}")));
    }
    Ok((1..modes).map(|k| TAU * k as f64 / modes as f64).collect())
}

pub fn bright_to_dark_ratio(modes: u64) -> Result<f64> {
    if modes < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 modes, got {modes}")));
    }
    Ok(1.0 / (modes - 1) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DarkCensus {
    pub modes: usize,
    /// `None` for odd `M`, where the closed form does not apply.
    #[serde(serialize_with = "ser_big")]
    pub analytic_count: Option<BigUint>,
    pub enumerated_count: Option<u64>,
    pub locked_dark_count: usize,
    pub bright_count: usize,
    pub ratio: f64,
}

fn ser_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_str(&b.to_string()),
        None => s.serialize_none(),
    }
}

pub fn census(modes: usize, enumerate: bool) -> Result<DarkCensus> {
    let analytic_count = match count_pi_phase_dark(modes) {
        Ok(c) => Some(c),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let enumerated_count = if enumerate {
        Some(count_sign_states(modes)?)
    } else {
        None
    };
    Ok(DarkCensus {
        modes,
        analytic_count,
        enumerated_count,
        locked_dark_count: locked_dark_phases(modes)?.len(),
        bright_count: 1,
        ratio: bright_to_dark_ratio(modes as u64)?,
    })
}
