//! Pauli string algebra over a fixed qubit register.
//!
//! A Pauli string is stored as a pair of bitmasks `(x_mask, z_mask)`; qubit
//! `q` carries letter `I`, `Z`, `X` or `Y` according to the bit pair
//! `(x_mask >> q & 1, z_mask >> q & 1)` being `00`, `01`, `10` or `11`.
//! With the convention `letter = i^(x·z) · X^x · Z^z` every letter is
//! Hermitian and products reduce to mask XORs plus a power-of-i phase, so
//! string multiplication never touches matrices.
//!
//! Sums of weighted strings ([`PauliSum`]) keep a canonical form: terms
//! sorted lexicographically by `(z_mask, x_mask)`, equal strings merged,
//! coefficients below a pruning threshold removed. Dense matrices use the
//! convention that qubit 0 is the least significant bit of the basis index.

use crate::error::{Result, VqeError};
use num_complex::Complex64;
use std::fmt;

/// Default pruning threshold for [`PauliSum::simplify`].
pub const COEFF_THRESHOLD: f64 = 1e-8;

/// Largest register for which dense matrices may be materialized.
pub const MAX_DENSE_QUBITS: usize = 12;

const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    /// Letter for an `(x, z)` bit pair.
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(PauliLetter::I),
            'X' => Ok(PauliLetter::X),
            'Y' => Ok(PauliLetter::Y),
            'Z' => Ok(PauliLetter::Z),
            other => Err(VqeError::PauliParse(format!("unknown letter '{other}'"))),
        }
    }
}

/// Tensor product of single-qubit Pauli letters on `n_qubits` qubits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliString {
    n_qubits: usize,
    x_mask: u64,
    z_mask: u64,
}

impl PauliString {
    /// The identity string.
    pub fn identity(n_qubits: usize) -> Self {
        PauliString {
            n_qubits,
            x_mask: 0,
            z_mask: 0,
        }
    }

    /// Build from raw masks; bits at or above `n_qubits` are rejected.
    pub fn from_masks(n_qubits: usize, x_mask: u64, z_mask: u64) -> Result<Self> {
        if n_qubits > 64 {
            return Err(VqeError::ResourceCap(n_qubits, 64));
        }
        let valid = if n_qubits == 64 {
            u64::MAX
        } else {
            (1u64 << n_qubits) - 1
        };
        if x_mask & !valid != 0 || z_mask & !valid != 0 {
            return Err(VqeError::PauliParse(format!(
                "mask bits outside a {n_qubits}-qubit register"
            )));
        }
        Ok(PauliString {
            n_qubits,
            x_mask,
            z_mask,
        })
    }

    /// Parse a letter string, qubit 0 leftmost: `"XIZ"` puts X on qubit 0.
    pub fn from_letters(letters: &str) -> Result<Self> {
        let mut x_mask = 0u64;
        let mut z_mask = 0u64;
        let mut n = 0usize;
        for (q, c) in letters.chars().enumerate() {
            if q >= 64 {
                return Err(VqeError::ResourceCap(q + 1, 64));
            }
            match PauliLetter::from_char(c)? {
                PauliLetter::I => {}
                PauliLetter::X => x_mask |= 1 << q,
                PauliLetter::Y => {
                    x_mask |= 1 << q;
                    z_mask |= 1 << q;
                }
                PauliLetter::Z => z_mask |= 1 << q,
            }
            n = q + 1;
        }
        if n == 0 {
            return Err(VqeError::PauliParse("empty letter string".into()));
        }
        Ok(PauliString {
            n_qubits: n,
            x_mask,
            z_mask,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    /// Letter on qubit `q`.
    pub fn letter(&self, q: usize) -> PauliLetter {
        PauliLetter::from_bits(self.x_mask >> q & 1 == 1, self.z_mask >> q & 1 == 1)
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        (self.x_mask | self.z_mask).count_ones() as usize
    }

    /// Mask of qubits carrying a non-identity letter.
    pub fn support(&self) -> u64 {
        self.x_mask | self.z_mask
    }

    /// Number of Y letters; fixes the matrix phase `i^y · X^x Z^z`.
    fn y_count(&self) -> u32 {
        (self.x_mask & self.z_mask).count_ones()
    }

    /// Product `self · other` as `(phase, string)`; the phase is one of
    /// `{1, i, -1, -i}`.
    pub fn multiply(&self, other: &PauliString) -> Result<(Complex64, PauliString)> {
        if self.n_qubits != other.n_qubits {
            return Err(VqeError::QubitCountMismatch(self.n_qubits, other.n_qubits));
        }
        let x = self.x_mask ^ other.x_mask;
        let z = self.z_mask ^ other.z_mask;
        // i-exponent: i^{y1} i^{y2} (-1)^{z1·x2} = i^{y3} · phase, working mod 4.
        // The (-1) comes from commuting Z^{z1} past X^{x2}.
        let mut e = self.y_count() + other.y_count() + 2 * (self.z_mask & other.x_mask).count_ones();
        let y3 = (x & z).count_ones() % 4;
        e = (e % 4 + 4 - y3) % 4;
        Ok((
            I_POW[e as usize],
            PauliString {
                n_qubits: self.n_qubits,
                x_mask: x,
                z_mask: z,
            },
        ))
    }

    /// True when the two strings commute.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anti = (self.x_mask & other.z_mask).count_ones()
            + (self.z_mask & other.x_mask).count_ones();
        anti % 2 == 0
    }

    /// Canonical sort key: lexicographic on `(z_mask, x_mask)`.
    fn sort_key(&self) -> (u64, u64) {
        (self.z_mask, self.x_mask)
    }

    /// Dense matrix action on a basis index: `P|k> = phase(k) |k ^ x_mask>`.
    pub(crate) fn basis_action(&self, k: u64) -> (u64, Complex64) {
        let sign = if (self.z_mask & k).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        (k ^ self.x_mask, I_POW[(self.y_count() % 4) as usize] * sign)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            write!(f, "{}", self.letter(q).to_char())?;
        }
        Ok(())
    }
}

/// One weighted string in a sum.
#[derive(Clone, Debug)]
pub struct PauliTerm {
    pub coefficient: Complex64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: Complex64, string: PauliString) -> Self {
        PauliTerm {
            coefficient,
            string,
        }
    }
}

/// Weighted sum of Pauli strings on a fixed register.
#[derive(Clone, Debug)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    /// Empty sum (the zero operator).
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: Vec::new(),
        }
    }

    /// `coefficient · I`.
    pub fn identity(n_qubits: usize, coefficient: Complex64) -> Self {
        PauliSum {
            n_qubits,
            terms: vec![PauliTerm::new(coefficient, PauliString::identity(n_qubits))],
        }
    }

    /// Single weighted string.
    pub fn from_term(term: PauliTerm) -> Self {
        PauliSum {
            n_qubits: term.string.n_qubits(),
            terms: vec![term],
        }
    }

    /// Build from a term list, checking register sizes agree.
    pub fn from_terms(n_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        for t in &terms {
            if t.string.n_qubits() != n_qubits {
                return Err(VqeError::QubitCountMismatch(n_qubits, t.string.n_qubits()));
            }
        }
        Ok(PauliSum { n_qubits, terms })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Append one term without normalizing; call [`simplify`] afterwards.
    pub fn push(&mut self, term: PauliTerm) -> Result<()> {
        if term.string.n_qubits() != self.n_qubits {
            return Err(VqeError::QubitCountMismatch(
                self.n_qubits,
                term.string.n_qubits(),
            ));
        }
        self.terms.push(term);
        Ok(())
    }

    /// Sum of two operators (not yet simplified).
    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != other.n_qubits {
            return Err(VqeError::QubitCountMismatch(self.n_qubits, other.n_qubits));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(PauliSum {
            n_qubits: self.n_qubits,
            terms,
        })
    }

    /// Scalar multiple.
    pub fn scaled(&self, factor: Complex64) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm::new(t.coefficient * factor, t.string))
                .collect(),
        }
    }

    /// Hermitian adjoint. Strings are self-adjoint, so only coefficients
    /// conjugate.
    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm::new(t.coefficient.conj(), t.string))
                .collect(),
        }
    }

    /// Operator product, with exact-zero terms dropped and like terms merged.
    pub fn multiply(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != other.n_qubits {
            return Err(VqeError::QubitCountMismatch(self.n_qubits, other.n_qubits));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let (phase, string) = a.string.multiply(&b.string)?;
                terms.push(PauliTerm::new(a.coefficient * b.coefficient * phase, string));
            }
        }
        Ok(PauliSum {
            n_qubits: self.n_qubits,
            terms,
        }
        .simplify(0.0))
    }

    /// Canonical form: sort by `(z_mask, x_mask)`, merge equal strings, drop
    /// coefficients with `|c| < threshold` (and exact zeros at threshold 0).
    pub fn simplify(&self, threshold: f64) -> PauliSum {
        let mut terms = self.terms.clone();
        terms.sort_by_key(|t| t.string.sort_key());
        let mut merged: Vec<PauliTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.string == t.string => last.coefficient += t.coefficient,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| {
            let mag = t.coefficient.norm();
            if threshold > 0.0 {
                mag >= threshold
            } else {
                mag > 0.0
            }
        });
        PauliSum {
            n_qubits: self.n_qubits,
            terms: merged,
        }
    }

    /// True when all merged coefficients are real within `tol`. Pauli strings
    /// are Hermitian, so this is exactly Hermiticity of the sum.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.simplify(0.0)
            .terms
            .iter()
            .all(|t| t.coefficient.im.abs() <= tol)
    }

    /// Dense row-major matrix, dimension `2^n`; qubit 0 is the least
    /// significant bit of the basis index. Capped at [`MAX_DENSE_QUBITS`].
    pub fn to_matrix(&self) -> Result<Vec<Complex64>> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(VqeError::ResourceCap(self.n_qubits, MAX_DENSE_QUBITS));
        }
        let dim = 1usize << self.n_qubits;
        let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
        for term in &self.terms {
            for col in 0..dim as u64 {
                let (row, phase) = term.string.basis_action(col);
                m[row as usize * dim + col as usize] += term.coefficient * phase;
            }
        }
        Ok(m)
    }

    /// Text form: one term per line, `<coeff_re> <coeff_im> <letters>`,
    /// letters with qubit 0 leftmost. Floats print in shortest round-trip
    /// form, so `from_text(to_text(s))` is bit-exact.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(&format!(
                "{} {} {}\n",
                t.coefficient.re, t.coefficient.im, t.string
            ));
        }
        out
    }

    /// Parse the [`to_text`] format. Blank lines are ignored.
    pub fn from_text(text: &str) -> Result<PauliSum> {
        let mut terms: Vec<PauliTerm> = Vec::new();
        let mut n_qubits = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let re = parts
                .next()
                .ok_or_else(|| VqeError::PauliParse(format!("missing fields in '{line}'")))?;
            let im = parts
                .next()
                .ok_or_else(|| VqeError::PauliParse(format!("missing fields in '{line}'")))?;
            let letters = parts
                .next()
                .ok_or_else(|| VqeError::PauliParse(format!("missing letters in '{line}'")))?;
            if parts.next().is_some() {
                return Err(VqeError::PauliParse(format!("trailing fields in '{line}'")));
            }
            let re: f64 = re
                .parse()
                .map_err(|_| VqeError::PauliParse(format!("bad real part in '{line}'")))?;
            let im: f64 = im
                .parse()
                .map_err(|_| VqeError::PauliParse(format!("bad imaginary part in '{line}'")))?;
            let string = PauliString::from_letters(letters)?;
            match n_qubits {
                None => n_qubits = Some(string.n_qubits()),
                Some(n) if n != string.n_qubits() => {
                    return Err(VqeError::QubitCountMismatch(n, string.n_qubits()));
                }
                _ => {}
            }
            terms.push(PauliTerm::new(Complex64::new(re, im), string));
        }
        let n = n_qubits.ok_or_else(|| VqeError::PauliParse("no terms in input".into()))?;
        PauliSum::from_terms(n, terms)
    }
}
