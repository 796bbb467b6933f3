//! Representable and square-free representable norms.
//!
//! For a lattice kind, `A` is the set of integers `n ≥ 1` taken by the
//! quadratic form (the squared geodesic lengths) and `B ⊆ A` its square-free
//! members. A length `√n` with `n ∈ B` is never an integer multiple of another
//! length, and every `n ∈ A` is `k²·m` with `m ∈ B`.
//!
//! Sieves can be written to and read from a flat binary file:
//!
//! ```text
//! 0..4   b"SPCT"
//! 4      kind (0 = square, 1 = triangular)
//! 5..8   zero
//! 8..16  limit, u64 little-endian
//! then   representable bits, then square-free representable bits,
//!        ceil(limit / 8) bytes each, bit n-1 holds norm n, LSB first
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::lattice::LatticeKind;
use crate::norm_bound;
use crate::primes::primes_up_to;

const MAGIC: &[u8; 4] = b"SPCT";
const HEADER_LEN: usize = 16;

/// Fixed-length bit array; bit `i` stands for the integer `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitArray {
    words: Vec<u64>,
    len: usize,
}

impl BitArray {
    fn new(len: usize, fill: bool, limit: u64) -> Result<Self> {
        let n_words = len.div_ceil(64);
        let mut words = Vec::new();
        words
            .try_reserve_exact(n_words)
            .map_err(|_| Error::Allocation { limit })?;
        words.resize(n_words, if fill { u64::MAX } else { 0 });
        let mut bits = BitArray { words, len };
        bits.clear_padding();
        Ok(bits)
    }

    fn clear_padding(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    fn clear(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    /// Number of set bits among the first `n` positions.
    fn count_prefix(&self, n: usize) -> u64 {
        let n = n.min(self.len);
        let full = n >> 6;
        let mut c: u64 = self.words[..full].iter().map(|w| w.count_ones() as u64).sum();
        let rest = n & 63;
        if rest != 0 {
            c += (self.words[full] & ((1u64 << rest) - 1)).count_ones() as u64;
        }
        c
    }

    fn and_assign(&mut self, other: &BitArray) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    fn byte_len(&self) -> usize {
        self.len.div_ceil(8)
    }

    fn write_bytes<W: Write>(&self, w: &mut W) -> Result<()> {
        let mut remaining = self.byte_len();
        for word in &self.words {
            let bytes = word.to_le_bytes();
            let take = remaining.min(8);
            w.write_all(&bytes[..take])?;
            remaining -= take;
        }
        Ok(())
    }

    fn read_bytes<R: Read>(r: &mut R, len: usize, limit: u64) -> Result<Self> {
        let mut bits = BitArray::new(len, false, limit)?;
        let mut remaining = bits.byte_len();
        for word in bits.words.iter_mut() {
            let take = remaining.min(8);
            let mut buf = [0u8; 8];
            r.read_exact(&mut buf[..take])?;
            *word = u64::from_le_bytes(buf);
            remaining -= take;
        }
        let tail = len % 64;
        if tail != 0 && bits.words.last().is_some_and(|w| w >> tail != 0) {
            return Err(Error::Format("nonzero padding bits".into()));
        }
        Ok(bits)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

/// Bit sieve of the sets `A` and `B` over `1..=limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumSieve {
    kind: LatticeKind,
    limit: u64,
    representable: BitArray,
    squarefree_representable: BitArray,
}

impl SpectrumSieve {
    /// Marks every value of the quadratic form up to `limit`, then strikes
    /// multiples of `p²` to get the square-free subset.
    pub fn build(kind: LatticeKind, limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::precondition("sieve limit must be at least 1"));
        }
        let len = usize::try_from(limit).map_err(|_| Error::Allocation { limit })?;
        let mut representable = BitArray::new(len, false, limit)?;
        let lim = limit as u128;

        // Both forms are symmetric in x and y, and every value is taken by
        // some pair with 0 ≤ y ≤ x.
        let mut x: u128 = 1;
        while x * x <= lim {
            for y in 0..=x {
                let n = match kind {
                    LatticeKind::Square => x * x + y * y,
                    LatticeKind::Triangular => x * x + x * y + y * y,
                };
                if n > lim {
                    break;
                }
                representable.set(n as usize - 1);
            }
            x += 1;
        }

        let mut squarefree = BitArray::new(len, true, limit)?;
        for p in primes_up_to(limit.isqrt()) {
            let sq = (p * p) as usize;
            let mut m = sq;
            while m <= len {
                squarefree.clear(m - 1);
                m += sq;
            }
        }
        squarefree.and_assign(&representable);

        Ok(SpectrumSieve { kind, limit, representable, squarefree_representable: squarefree })
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_representable(&self, n: u64) -> bool {
        n >= 1 && n <= self.limit && self.representable.get(n as usize - 1)
    }

    pub fn is_squarefree_representable(&self, n: u64) -> bool {
        n >= 1 && n <= self.limit && self.squarefree_representable.get(n as usize - 1)
    }

    fn covered(&self, l: f64) -> Result<u64> {
        if !(l >= 0.0) {
            return Err(Error::precondition(format!("length must be non-negative, got {l}")));
        }
        let needed = norm_bound(l);
        if needed > self.limit {
            return Err(Error::SieveLimit { l, needed, limit: self.limit });
        }
        Ok(needed)
    }

    /// Number of distinct lengths `√n ≤ l` with `n ∈ A`.
    pub fn count_a(&self, l: f64) -> Result<u64> {
        let n = self.covered(l)?;
        Ok(self.representable.count_prefix(n as usize))
    }

    /// Number of distinct lengths `√n ≤ l` with `n ∈ B`.
    pub fn count_b(&self, l: f64) -> Result<u64> {
        let n = self.covered(l)?;
        Ok(self.squarefree_representable.count_prefix(n as usize))
    }

    /// The members of `B` up to `l²`, ascending.
    pub fn b_values(&self, l: f64) -> Result<Vec<u64>> {
        let n = self.covered(l)?;
        Ok(self
            .squarefree_representable
            .ones()
            .map(|i| i as u64 + 1)
            .take_while(|&v| v <= n)
            .collect())
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        let mut header = [0u8; HEADER_LEN];
        header[..4].copy_from_slice(MAGIC);
        header[4] = self.kind.byte();
        header[8..].copy_from_slice(&self.limit.to_le_bytes());
        w.write_all(&header)?;
        self.representable.write_bytes(w)?;
        self.squarefree_representable.write_bytes(w)?;
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut header = [0u8; HEADER_LEN];
        r.read_exact(&mut header)?;
        if &header[..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let kind = LatticeKind::from_byte(header[4])
            .ok_or_else(|| Error::Format(format!("unknown kind byte {}", header[4])))?;
        if header[5..8] != [0, 0, 0] {
            return Err(Error::Format("nonzero reserved header bytes".into()));
        }
        let limit = u64::from_le_bytes(header[8..].try_into().expect("8 bytes"));
        if limit == 0 {
            return Err(Error::Format("zero limit".into()));
        }
        let len = usize::try_from(limit).map_err(|_| Error::Allocation { limit })?;
        let representable = BitArray::read_bytes(r, len, limit)?;
        let squarefree_representable = BitArray::read_bytes(r, len, limit)?;
        let subset = squarefree_representable
            .words
            .iter()
            .zip(&representable.words)
            .all(|(b, a)| b & !a == 0);
        if !subset {
            return Err(Error::Format("square-free bits outside the representable set".into()));
        }
        Ok(SpectrumSieve { kind, limit, representable, squarefree_representable })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        Self::read_from(&mut r)
    }
}

/// Builds a sieve just large enough for lengths up to `l`.
pub fn sieve_for_length(kind: LatticeKind, l: f64) -> Result<SpectrumSieve> {
    SpectrumSieve::build(kind, norm_bound(l).max(1))
}
