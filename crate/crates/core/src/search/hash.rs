//! Sign-signature labels that spread leaves over the `2^m` branches of the
//! crown.

use serde::{Deserialize, Serialize};

/// How each key value contributes to the label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SignMode {
    /// `1` for a positive value, `0` otherwise.
    Binary,
    /// `+1`, `0` or `-1` by the sign of the value.
    #[default]
    Ternary,
}

impl std::str::FromStr for SignMode {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "binary" => Ok(SignMode::Binary),
            "ternary" => Ok(SignMode::Ternary),
            other => Err(crate::Error::invalid(format!("unknown sign mode {other:?}"))),
        }
    }
}

fn signature(value: i64, mode: SignMode) -> i64 {
    match mode {
        SignMode::Binary => i64::from(value > 0),
        SignMode::Ternary => value.signum(),
    }
}

/// Branch label in `[0, 2^m)` for a key holding `paf(s)` at `s = 1..=v/2`.
///
/// When the key fits in the crown (`len ≤ m`) the label is
/// `Σ sign(key[i]) · 2^i`, reduced into range modulo `2^m` (ternary signs can
/// make the sum negative). Longer keys go through a 32-bit register `F`,
/// rotated left by one and then combined with the next signature at every
/// step, and the label is `F mod 2^m`.
pub fn hash_label(key: &[i64], m: u32, mode: SignMode) -> u32 {
    assert!((1..=31).contains(&m), "crown exponent must be in 1..=31");
    let modulus = 1i64 << m;
    if key.len() <= m as usize {
        let f: i64 = key
            .iter()
            .enumerate()
            .map(|(i, &x)| signature(x, mode) << i)
            .sum();
        return f.rem_euclid(modulus) as u32;
    }
    let mut reg: u32 = 0;
    for &x in key {
        reg = reg.rotate_left(1);
        reg = match mode {
            SignMode::Binary => reg | signature(x, mode) as u32,
            SignMode::Ternary => reg.wrapping_add_signed(signature(x, mode) as i32),
        };
    }
    reg & ((1u32 << m) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_formula() {
        assert_eq!(hash_label(&[5, -1, 2], 3, SignMode::Binary), 5);
        assert_eq!(hash_label(&[5, -1, 2, 0], 4, SignMode::Binary), 5);
        assert_eq!(hash_label(&[0, 0, 0], 3, SignMode::Binary), 0);
        assert_eq!(hash_label(&[0; 40], 7, SignMode::Binary), 0);
        assert_eq!(hash_label(&[0; 40], 7, SignMode::Ternary), 0);
        // 1 - 2 + 4 = 3
        assert_eq!(hash_label(&[5, -1, 2], 3, SignMode::Ternary), 3);
        // -1 - 2 = -3 ≡ 5 mod 8
        assert_eq!(hash_label(&[-4, -4, 0], 3, SignMode::Ternary), 5);
    }

    #[test]
    fn register_formula() {
        // signs 1,0,1,1 pushed through the register, last three bits kept
        assert_eq!(hash_label(&[3, -1, 3, 3], 3, SignMode::Binary), 0b011);
        assert_eq!(hash_label(&[3, -1, 3, 3], 2, SignMode::Binary), 0b11);
        // ternary: ((1·2 - 1)·2 + 1)·2 + 0 = 6
        assert_eq!(hash_label(&[1, -1, 1, 0], 3, SignMode::Ternary), 6);
    }

    #[test]
    fn labels_stay_in_range() {
        let key: Vec<i64> = (0..50).map(|i| if i % 3 == 0 { -5 } else { 3 }).collect();
        for m in 1..=31 {
            for mode in [SignMode::Binary, SignMode::Ternary] {
                let l = hash_label(&key, m, mode);
                assert!(u64::from(l) < 1u64 << m);
                assert_eq!(l, hash_label(&key.clone(), m, mode));
            }
        }
    }
}
