//! GF(2) linear algebra on packed rows.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::pauli::PauliOp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BinMatrix {
    pub fn new(cols: usize) -> Self {
        BinMatrix { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch(r.len(), cols));
            }
        }
        Ok(BinMatrix { cols, rows })
    }

    pub fn push_row(&mut self, r: BitVec) -> Result<()> {
        if r.len() != self.cols {
            return Err(Error::LengthMismatch(r.len(), self.cols));
        }
        self.rows.push(r);
        Ok(())
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut t: Vec<BitVec> = (0..self.cols).map(|_| BitVec::zeros(self.rows.len())).collect();
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t[j].set(i, true);
            }
        }
        BinMatrix { cols: self.rows.len(), rows: t }
    }

    /// Reduced row-echelon form: nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<BitVec>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else { continue };
            rows.swap(r, p);
            let pr = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pr);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else { continue };
            rows.swap(r, p);
            let pr = rows[r].clone();
            for row in rows[r + 1..].iter_mut() {
                if row.get(c) {
                    row.xor_assign(&pr);
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        r
    }

    /// Basis of {x : M x = 0}, one vector per free column, in increasing free-column order.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let (rows, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(f, true);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Coefficients c with c·M = v, if v lies in the row space.
    pub fn in_span(&self, v: &BitVec) -> Result<Option<BitVec>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch(v.len(), self.cols));
        }
        Ok(Span::new(self).solve(v))
    }

    /// Multiplies the coefficient vector into the rows: Σ c_i row_i.
    pub fn combine(&self, c: &BitVec) -> BitVec {
        let mut acc = BitVec::zeros(self.cols);
        for i in c.ones() {
            acc.xor_assign(&self.rows[i]);
        }
        acc
    }
}

/// Row space of a matrix prepared for repeated membership queries.
#[derive(Clone, Debug)]
pub struct Span {
    cols: usize,
    nsrc: usize,
    rows: Vec<BitVec>,
    combos: Vec<BitVec>,
    pivots: Vec<usize>,
    src: BinMatrix,
}

impl Span {
    pub fn new(m: &BinMatrix) -> Self {
        let nsrc = m.nrows();
        let mut rows = m.rows.clone();
        let mut combos: Vec<BitVec> = (0..nsrc).map(|i| BitVec::from_indices(nsrc, [i])).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else { continue };
            rows.swap(r, p);
            combos.swap(r, p);
            let (pr, pc) = (rows[r].clone(), combos[r].clone());
            for i in 0..rows.len() {
                if i != r && rows[i].get(c) {
                    rows[i].xor_assign(&pr);
                    combos[i].xor_assign(&pc);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        combos.truncate(r);
        Span { cols: m.cols, nsrc, rows, combos, pivots, src: m.clone() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut w = v.clone();
        let mut c = BitVec::zeros(self.nsrc);
        for ((row, combo), &p) in self.rows.iter().zip(&self.combos).zip(&self.pivots) {
            if w.get(p) {
                w.xor_assign(row);
                c.xor_assign(combo);
            }
        }
        (w, c)
    }

    /// Canonical solution in pivot order, checked by re-substitution.
    pub fn solve(&self, v: &BitVec) -> Option<BitVec> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let (rest, c) = self.reduce(v);
        if !rest.is_zero() {
            return None;
        }
        assert_eq!(&self.src.combine(&c), v, "span solution failed re-substitution");
        Some(c)
    }
}

/// Indices of generators whose product equals `p` up to phase, if any.
pub fn group_membership(p: &PauliOp, gens: &[PauliOp]) -> Result<Option<Vec<usize>>> {
    Ok(GroupSpan::new(p.n(), gens)?.membership(p)?)
}

/// Prepared Pauli group span for repeated membership tests.
#[derive(Clone, Debug)]
pub struct GroupSpan {
    n: usize,
    span: Span,
}

impl GroupSpan {
    pub fn new(n: usize, gens: &[PauliOp]) -> Result<Self> {
        let mut m = BinMatrix::new(2 * n);
        for g in gens {
            if g.n() != n {
                return Err(Error::LengthMismatch(g.n(), n));
            }
            m.push_row(g.symplectic())?;
        }
        Ok(GroupSpan { n, span: Span::new(&m) })
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn membership(&self, p: &PauliOp) -> Result<Option<Vec<usize>>> {
        if p.n() != self.n {
            return Err(Error::LengthMismatch(p.n(), self.n));
        }
        Ok(self.span.solve(&p.symplectic()).map(|c| c.ones().collect()))
    }

    pub fn contains(&self, p: &PauliOp) -> bool {
        p.n() == self.n && self.span.contains(&p.symplectic())
    }
}
