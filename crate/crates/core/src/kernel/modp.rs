//! Arithmetic modulo the Mersenne prime 2^61 - 1, used to presolve linear
//! systems before the exact solve.

pub type Residue = u64;

pub const P: u64 = (1 << 61) - 1;

pub fn add(a: Residue, b: Residue) -> Residue {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: Residue, b: Residue) -> Residue {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn mul(a: Residue, b: Residue) -> Residue {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow(mut base: Residue, mut e: u64) -> Residue {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

pub fn inv(a: Residue) -> Option<Residue> {
    if a.is_multiple_of(P) {
        None
    } else {
        Some(pow(a, P - 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        for a in [1u64, 2, 3, 12345, P - 1] {
            assert_eq!(mul(a, inv(a).unwrap()), 1);
        }
        assert!(inv(0).is_none());
        assert_eq!(sub(3, 5), P - 2);
    }
}
