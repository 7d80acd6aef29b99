//! Finite alphabets, words, k-uniform morphisms and their fixed points, and
//! the three sequence families: the generalized Thue-Morse sequences t_p, the
//! periodic sequences f_q, and their pairing z_(p,q).
//!
//! Each family is generated two independent ways (arithmetic recurrence and
//! morphism fixed point); the tests cross-validate one against the other.

use num_integer::Integer;

use crate::error::Error;
use crate::Result;

/// Index into a finite alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> u32 {
        self.0
    }
}

/// Pack the product symbol (x, y) of Z/pZ x Z/qZ as x*q + y.
pub fn pair_index(x: u32, y: u32, q: u32) -> Symbol {
    Symbol(x * q + y)
}

/// Unpack a product symbol into its (x, y) parts.
pub fn pair_parts(s: Symbol, q: u32) -> (u32, u32) {
    (s.0 / q, s.0 % q)
}

/// A finite word over an alphabet of a known size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    symbols: Vec<Symbol>,
    alphabet_size: u32,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, alphabet_size: u32) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidParameter("alphabet must be nonempty".into()));
        }
        if let Some(bad) = symbols.iter().find(|s| s.0 >= alphabet_size) {
            return Err(Error::SymbolOutOfRange { symbol: bad.0, alphabet: alphabet_size });
        }
        Ok(Word { symbols, alphabet_size })
    }

    pub fn empty(alphabet_size: u32) -> Self {
        Word { symbols: Vec::new(), alphabet_size }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn get(&self, i: usize) -> Symbol {
        self.symbols[i]
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.iter().copied()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet_size != other.alphabet_size {
            return Err(Error::InvalidParameter(
                "concatenating words over different alphabets".into(),
            ));
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(Word { symbols, alphabet_size: self.alphabet_size })
    }
}

/// A k-uniform substitution: every symbol maps to a word of length exactly k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformMorphism {
    alphabet_size: u32,
    arity: usize,
    images: Vec<Word>,
}

impl UniformMorphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let alphabet_size = images.len() as u32;
        if alphabet_size == 0 {
            return Err(Error::InvalidParameter("morphism needs a nonempty alphabet".into()));
        }
        let arity = images[0].len();
        if arity == 0 {
            return Err(Error::InvalidParameter("morphism images must be nonempty".into()));
        }
        for img in &images {
            if img.len() != arity {
                return Err(Error::InvalidParameter(
                    "morphism images must all have equal length".into(),
                ));
            }
            if img.alphabet_size() != alphabet_size {
                return Err(Error::InvalidParameter("morphism image over wrong alphabet".into()));
            }
        }
        Ok(UniformMorphism { alphabet_size, arity, images })
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// The uniform length k of every image.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn image(&self, s: Symbol) -> Result<&Word> {
        self.images
            .get(s.0 as usize)
            .ok_or(Error::SymbolOutOfRange { symbol: s.0, alphabet: self.alphabet_size })
    }

    /// Apply the substitution to a whole word.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut symbols = Vec::with_capacity(w.len() * self.arity);
        for s in w.iter() {
            symbols.extend_from_slice(self.image(s)?.symbols());
        }
        Ok(Word { symbols, alphabet_size: self.alphabet_size })
    }

    /// Is the image of `seed` of the form `seed w`?
    pub fn is_prolongable_on(&self, seed: Symbol) -> bool {
        self.images
            .get(seed.0 as usize)
            .is_some_and(|img| !img.is_empty() && img.get(0) == seed)
    }

    /// First `len` symbols of the fixed point starting at `seed`, grown by
    /// repeated whole-word substitution and truncated. Memory cost is about
    /// 4 bytes per symbol of the requested prefix.
    pub fn fixed_point_prefix(&self, seed: Symbol, len: usize) -> Result<Word> {
        if self.arity < 2 {
            return Err(Error::InvalidParameter("fixed point needs arity >= 2".into()));
        }
        if !self.is_prolongable_on(seed) {
            return Err(Error::NotProlongable);
        }
        if len == 0 {
            return Ok(Word::empty(self.alphabet_size));
        }
        let mut w = Word::new(vec![seed], self.alphabet_size)?;
        while w.len() < len {
            w = self.apply(&w)?;
        }
        w.symbols.truncate(len);
        Ok(w)
    }
}

fn require_base(name: &str, value: u32) -> Result<()> {
    if value < 2 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be at least 2, got {value}"
        )));
    }
    Ok(())
}

/// Base-p digit sum of n.
pub fn digit_sum(p: u32, mut n: u64) -> Result<u64> {
    require_base("p", p)?;
    let p = p as u64;
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    Ok(s)
}

/// t_p(n): the generalized Thue-Morse value, computed as the base-p digit sum
/// mod p. The defining recurrence t_p(pm + r) = t_p(m) + r is kept in the
/// test suite as the independent oracle.
pub fn tm_symbol(p: u32, n: u64) -> Result<Symbol> {
    Ok(Symbol((digit_sum(p, n)? % p as u64) as u32))
}

/// f_q(n) = n mod q.
pub fn periodic_symbol(q: u32, n: u64) -> Result<Symbol> {
    require_base("q", q)?;
    Ok(Symbol((n % q as u64) as u32))
}

/// z_(p,q)(n) = (t_p(n), n mod q), packed as a product symbol.
pub fn dekking_symbol(p: u32, q: u32, n: u64) -> Result<Symbol> {
    require_base("p", p)?;
    require_base("q", q)?;
    let x = tm_symbol(p, n)?.0;
    let y = (n % q as u64) as u32;
    Ok(pair_index(x, y, q))
}

/// The p-uniform morphism a -> a, a+1, ..., a+p-1 (mod p) whose fixed point
/// at 0 is t_p.
pub fn thue_morse_morphism(p: u32) -> Result<UniformMorphism> {
    require_base("p", p)?;
    let images = (0..p)
        .map(|a| Word::new((0..p).map(|j| Symbol((a + j) % p)).collect(), p))
        .collect::<Result<Vec<_>>>()?;
    UniformMorphism::new(images)
}

const MORPHISM_LEN_CAP: u64 = 1 << 24;

/// Q = p^phi(q), the shared arity of the combined morphisms. Errors when the
/// power overflows or exceeds the in-memory cap.
pub fn combined_arity(p: u32, q: u32) -> Result<u64> {
    let phi = crate::cyclotomic::totient(q as u64);
    let exponent = u32::try_from(phi).map_err(|_| Error::TooLarge {
        what: format!("exponent phi({q})"),
        limit: u32::MAX as u64,
    })?;
    let big_q = (p as u64)
        .checked_pow(exponent)
        .ok_or(Error::TooLarge { what: format!("{p}^phi({q})"), limit: u64::MAX })?;
    if big_q > MORPHISM_LEN_CAP {
        return Err(Error::TooLarge {
            what: format!("{p}^phi({q}) = {big_q}"),
            limit: MORPHISM_LEN_CAP,
        });
    }
    Ok(big_q)
}

fn require_coprime(p: u32, q: u32) -> Result<()> {
    require_base("p", p)?;
    require_base("q", q)?;
    if (p as u64).gcd(&(q as u64)) != 1 {
        return Err(Error::NotCoprime { a: p as u64, b: q as u64 });
    }
    Ok(())
}

/// The Q-uniform morphism a -> a + f_q(0), ..., a + f_q(Q-1) on Z/qZ whose
/// fixed point at 0 is f_q; needs gcd(p, q) = 1 so that Q = 1 (mod q).
pub fn delta_morphism(p: u32, q: u32) -> Result<UniformMorphism> {
    require_coprime(p, q)?;
    let big_q = combined_arity(p, q)?;
    let images = (0..q)
        .map(|a| {
            Word::new(
                (0..big_q).map(|j| Symbol((a + (j % q as u64) as u32) % q)).collect(),
                q,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    UniformMorphism::new(images)
}

/// The Q-uniform power phi^phi(q) of the Thue-Morse morphism on Z/pZ; its
/// fixed point at 0 is t_p.
pub fn mu_morphism(p: u32, q: u32) -> Result<UniformMorphism> {
    require_coprime(p, q)?;
    combined_arity(p, q)?;
    let phi = crate::cyclotomic::totient(q as u64);
    let base = thue_morse_morphism(p)?;
    let images = (0..p)
        .map(|a| {
            let mut w = Word::new(vec![Symbol(a)], p)?;
            for _ in 0..phi {
                w = base.apply(&w)?;
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    UniformMorphism::new(images)
}

/// The combined Q-uniform morphism on Z/pZ x Z/qZ, pairing the mu and delta
/// images position by position; its fixed point at (0,0) is z_(p,q).
pub fn lambda_morphism(p: u32, q: u32) -> Result<UniformMorphism> {
    let mu = mu_morphism(p, q)?;
    let delta = delta_morphism(p, q)?;
    let big_q = mu.arity();
    let alphabet = p * q;
    let mut images = Vec::with_capacity(alphabet as usize);
    for x in 0..p {
        let mx = mu.image(Symbol(x))?.clone();
        for y in 0..q {
            let dy = delta.image(Symbol(y))?;
            let symbols = (0..big_q)
                .map(|j| pair_index(mx.get(j).0, dy.get(j).0, q))
                .collect();
            images.push(Word::new(symbols, alphabet)?);
        }
    }
    UniformMorphism::new(images)
}

/// Which sequence drives a turtle curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    ThueMorse { p: u32 },
    Periodic { q: u32 },
    Dekking { p: u32, q: u32 },
}

impl SequenceSpec {
    pub fn thue_morse(p: u32) -> Result<Self> {
        require_base("p", p)?;
        Ok(SequenceSpec::ThueMorse { p })
    }

    pub fn periodic(q: u32) -> Result<Self> {
        require_base("q", q)?;
        Ok(SequenceSpec::Periodic { q })
    }

    pub fn dekking(p: u32, q: u32) -> Result<Self> {
        require_base("p", p)?;
        require_base("q", q)?;
        Ok(SequenceSpec::Dekking { p, q })
    }

    pub fn alphabet_size(&self) -> u32 {
        match *self {
            SequenceSpec::ThueMorse { p } => p,
            SequenceSpec::Periodic { q } => q,
            SequenceSpec::Dekking { p, q } => p * q,
        }
    }

    pub fn symbol(&self, n: u64) -> Symbol {
        match *self {
            SequenceSpec::ThueMorse { p } => tm_symbol(p, n).expect("validated base"),
            SequenceSpec::Periodic { q } => periodic_symbol(q, n).expect("validated base"),
            SequenceSpec::Dekking { p, q } => dekking_symbol(p, q, n).expect("validated bases"),
        }
    }

    /// The generating morphism, where one exists: the Thue-Morse morphism for
    /// t_p, the combined morphism for z_(p,q) (which needs gcd(p,q) = 1).
    pub fn morphism(&self) -> Result<UniformMorphism> {
        match *self {
            SequenceSpec::ThueMorse { p } => thue_morse_morphism(p),
            SequenceSpec::Periodic { q } => Err(Error::InvalidParameter(format!(
                "the periodic sequence mod {q} is generated jointly; use delta_morphism(p, {q})"
            ))),
            SequenceSpec::Dekking { p, q } => lambda_morphism(p, q),
        }
    }

    pub fn seed(&self) -> Symbol {
        Symbol(0)
    }
}

/// Incremental scanner for t_p(n), n = 0, 1, 2, ...; amortized O(1) per step
/// by tracking the base-p digits through carries.
#[derive(Clone, Debug)]
pub(crate) struct TmScanner {
    p: u32,
    digits: Vec<u32>,
    current: u32,
}

impl TmScanner {
    pub fn new(p: u32) -> Self {
        debug_assert!(p >= 2);
        TmScanner { p, digits: Vec::new(), current: 0 }
    }

    /// t_p of the current index.
    pub fn value(&self) -> u32 {
        self.current
    }

    /// Advance to the next index.
    pub fn advance(&mut self) {
        let mut carries = 0u64;
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.digits.push(0);
            }
            self.digits[i] += 1;
            if self.digits[i] == self.p {
                self.digits[i] = 0;
                carries += 1;
                i += 1;
            } else {
                break;
            }
        }
        // each carried digit drops by p-1, which is +1 mod p, as is the final increment
        self.current = ((self.current as u64 + 1 + carries) % self.p as u64) as u32;
    }
}
