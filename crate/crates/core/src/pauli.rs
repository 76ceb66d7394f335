//! Phase-free Pauli operators in binary symplectic form.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Single-qubit Pauli, encoded as (x, z) bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NONTRIVIAL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    #[inline]
    pub fn mul(self, other: Pauli) -> Pauli {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        Pauli::from_bits(a ^ c, b ^ d)
    }

    /// True when both are nontrivial and distinct.
    #[inline]
    pub fn anticommutes(self, other: Pauli) -> bool {
        self != Pauli::I && other != Pauli::I && self != other
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// n-qubit Pauli operator modulo phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp { x: BitVec::zeros(n), z: BitVec::zeros(n) }
    }

    pub fn from_bits(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch(x.len(), z.len()));
        }
        Ok(PauliOp { x, z })
    }

    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut op = Self::identity(n);
        op.set(q, p);
        op
    }

    pub fn from_sparse(n: usize, terms: &[(usize, Pauli)]) -> Self {
        let mut op = Self::identity(n);
        for &(q, p) in terms {
            op.mul_at(q, p);
        }
        op
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    #[inline]
    pub fn set(&mut self, q: usize, p: Pauli) {
        let (a, b) = p.bits();
        self.x.set(q, a);
        self.z.set(q, b);
    }

    /// Multiplies qubit `q` by `p` in place.
    #[inline]
    pub fn mul_at(&mut self, q: usize, p: Pauli) {
        let (a, b) = p.bits();
        if a {
            self.x.flip(q);
        }
        if b {
            self.z.flip(q);
        }
    }

    pub fn weight(&self) -> usize {
        self.x.words().iter().zip(self.z.words()).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Qubits with nontrivial action, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).ones().collect()
    }

    pub fn terms(&self) -> Vec<(usize, Pauli)> {
        self.support().into_iter().map(|q| (q, self.get(q))).collect()
    }

    fn check(&self, other: &PauliOp) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    /// Symplectic form: true iff the operators anticommute.
    pub fn anticommutes(&self, other: &PauliOp) -> Result<bool> {
        self.check(other)?;
        Ok(self.anticommutes_unchecked(other))
    }

    #[inline]
    pub fn anticommutes_unchecked(&self, other: &PauliOp) -> bool {
        let mut acc = 0u32;
        let (a, b, c, d) = (self.x.words(), self.z.words(), other.x.words(), other.z.words());
        for k in 0..a.len() {
            acc ^= ((a[k] & d[k]) ^ (b[k] & c[k])).count_ones();
        }
        acc & 1 == 1
    }

    /// 0 if commuting, 1 if anticommuting.
    pub fn commutes(&self, other: &PauliOp) -> Result<u8> {
        Ok(self.anticommutes(other)? as u8)
    }

    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check(other)?;
        let mut r = self.clone();
        r.mul_assign_unchecked(other);
        Ok(r)
    }

    pub fn mul_assign(&mut self, other: &PauliOp) -> Result<()> {
        self.check(other)?;
        self.mul_assign_unchecked(other);
        Ok(())
    }

    #[inline]
    pub fn mul_assign_unchecked(&mut self, other: &PauliOp) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// The length-2n vector (x | z).
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Vector whose dot product with `symplectic()` of another operator is the commutation bit.
    pub fn symplectic_dual(&self) -> BitVec {
        self.z.concat(&self.x)
    }

    pub fn from_symplectic(v: &BitVec) -> Result<PauliOp> {
        if v.len() % 2 != 0 {
            return Err(Error::LengthMismatch(v.len(), v.len() + 1));
        }
        let n = v.len() / 2;
        Ok(PauliOp { x: v.slice(0, n), z: v.slice(n, 2 * n) })
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.n()).map(|q| self.get(q).to_char()).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut op = PauliOp::identity(chars.len());
        for (pos, &ch) in chars.iter().enumerate() {
            let p = Pauli::from_char(ch).ok_or(Error::PauliParse { pos, ch })?;
            op.set(pos, p);
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn commutation_examples() {
        assert_eq!(op("X").commutes(&op("Z")).unwrap(), 1);
        assert_eq!(op("XX").commutes(&op("ZZ")).unwrap(), 0);
        assert_eq!(op("XXI").commutes(&op("IYY")).unwrap(), 1);
        assert!(op("X").commutes(&op("XX")).is_err());
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(op("X").mul(&op("Z")).unwrap(), op("Y"));
        assert_eq!(op("ZZI").mul(&op("IZZ")).unwrap(), op("ZIZ"));
        let p = op("XYZI");
        assert_eq!(p.mul(&PauliOp::identity(4)).unwrap(), p);
        assert!(p.mul(&p).unwrap().is_identity());
    }

    #[test]
    fn weight_and_roundtrip() {
        let p = op("IXYZI");
        assert_eq!(p.weight(), 3);
        assert_eq!(p.to_string(), "IXYZI");
        assert_eq!(PauliOp::identity(7).weight(), 0);
        assert!(matches!("IXQ".parse::<PauliOp>(), Err(Error::PauliParse { pos: 2, ch: 'Q' })));
    }

    #[test]
    fn symplectic_roundtrip() {
        let p = op("XYZIY");
        assert_eq!(PauliOp::from_symplectic(&p.symplectic()).unwrap(), p);
        let q = op("ZZXIY");
        assert_eq!(p.symplectic_dual().dot(&q.symplectic()), p.anticommutes(&q).unwrap());
    }
}
