//! Free-group words over a finite generator alphabet.
//!
//! Words are flat letter arrays kept freely reduced. Generators are plain
//! indices; names only matter for the text syntax handled by [`Alphabet`]:
//! whitespace-separated (or juxtaposed) lowercase names, inverses written as
//! a trailing `'` or `^-1`, e.g. `b' a a b a' a' a'`.

use std::fmt;
use std::ops::Mul;

use crate::normkit::{ComplexMatrix, UnitaryMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(pub usize);

impl Generator {
    pub fn id(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub sign: Sign,
}

impl Letter {
    pub fn new(generator: usize, sign: Sign) -> Self {
        Self {
            generator: Generator(generator),
            sign,
        }
    }

    pub fn pos(generator: usize) -> Self {
        Self::new(generator, Sign::Plus)
    }

    pub fn neg(generator: usize) -> Self {
        Self::new(generator, Sign::Minus)
    }

    pub fn inverse(self) -> Self {
        Self {
            generator: self.generator,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

/// A freely reduced word; the empty word is the identity of the free group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Self { letters: stack }
    }

    pub fn letter(l: Letter) -> Self {
        Self { letters: vec![l] }
    }

    pub fn generator(g: usize) -> Self {
        Self::letter(Letter::pos(g))
    }

    /// `g^e` as a reduced word.
    pub fn power(g: usize, e: i64) -> Self {
        let l = if e >= 0 {
            Letter::pos(g)
        } else {
            Letter::neg(g)
        };
        Self {
            letters: vec![l; e.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `x w x^{-1}`.
    pub fn conjugate_by(&self, x: &Word) -> Word {
        x.multiply(self).multiply(&x.invert())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator.0).max()
    }

    /// Exponent sum of every generator `0..rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for l in &self.letters {
            if l.generator.0 < rank {
                sums[l.generator.0] += l.sign.as_i32() as i64;
            }
        }
        sums
    }

    /// Product of the assigned unitaries (adjoints for inverse letters) in
    /// word order; the empty word evaluates to `1_k`.
    pub fn evaluate(&self, assignment: &[UnitaryMatrix]) -> Result<UnitaryMatrix> {
        evaluate(self, assignment)
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

pub fn evaluate(word: &Word, assignment: &[UnitaryMatrix]) -> Result<UnitaryMatrix> {
    let k = match assignment.first() {
        Some(u) => u.dim(),
        None if word.is_empty() => return Err(Error::InvalidArgument("empty assignment".into())),
        None => return Err(Error::MissingGenerator(word.letters[0].generator.0)),
    };
    for u in assignment {
        if u.dim() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: u.dim(),
            });
        }
    }
    for l in &word.letters {
        if l.generator.0 >= assignment.len() {
            return Err(Error::MissingGenerator(l.generator.0));
        }
    }
    let mut adjoints: Vec<Option<ComplexMatrix>> = vec![None; assignment.len()];
    let mut acc: Option<ComplexMatrix> = None;
    for l in &word.letters {
        let g = l.generator.0;
        let factor = match l.sign {
            Sign::Plus => assignment[g].matrix(),
            Sign::Minus => adjoints[g].get_or_insert_with(|| assignment[g].matrix().adjoint()),
        };
        acc = Some(match acc {
            None => factor.clone(),
            Some(a) => a.matmul(factor),
        });
    }
    // re-certify every product: drift guard for long words
    match acc {
        None => Ok(UnitaryMatrix::identity(k)),
        Some(m) => UnitaryMatrix::certify(m),
    }
}

/// One factor `x r^{±1} x^{-1}` of a normal-closure witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugate {
    pub conjugator: Word,
    pub relator: Word,
    pub sign: Sign,
}

impl Conjugate {
    pub fn new(conjugator: Word, relator: Word, sign: Sign) -> Self {
        Self {
            conjugator,
            relator,
            sign,
        }
    }

    pub fn word(&self) -> Word {
        let r = match self.sign {
            Sign::Plus => self.relator.clone(),
            Sign::Minus => self.relator.invert(),
        };
        r.conjugate_by(&self.conjugator)
    }
}

/// Reduced product `x_1 r_1^{±1} x_1^{-1} ... x_m r_m^{±1} x_m^{-1}`.
/// The witness length `m` bounds `|phi(r) - 1| <= m * defect(phi)`.
pub fn conjugation_product(witness: &[Conjugate]) -> Word {
    witness
        .iter()
        .fold(Word::empty(), |acc, c| acc.multiply(&c.word()))
}

/// Generator names and the word text syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let mut chars = n.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
                && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit());
            if !ok {
                return Err(Error::Parse(format!("invalid generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Parse(format!("duplicate generator name `{n}`")));
            }
        }
        Ok(Self { names })
    }

    /// `a, b, c, ...` for up to 26 generators, `x1, x2, ...` beyond.
    pub fn standard(rank: usize) -> Self {
        let names = if rank <= 26 {
            (0..rank)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect()
        } else {
            (1..=rank).map(|i| format!("x{i}")).collect()
        };
        Self { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Generator) -> &str {
        &self.names[g.0]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let mut rest = token;
            while !rest.is_empty() {
                let name_len = rest
                    .char_indices()
                    .take_while(|(_, c)| c.is_ascii_lowercase() || c.is_ascii_digit())
                    .last()
                    .map(|(i, c)| i + c.len_utf8())
                    .unwrap_or(0);
                // longest alphabet name that prefixes `rest`
                let (g, len) = (1..=name_len)
                    .rev()
                    .find_map(|l| self.index_of(&rest[..l]).map(|g| (g, l)))
                    .ok_or_else(|| Error::Parse(format!("unknown generator in `{token}`")))?;
                rest = &rest[len..];
                let sign = if let Some(r) = rest.strip_prefix('\'') {
                    rest = r;
                    Sign::Minus
                } else if let Some(r) = rest.strip_prefix("^-1") {
                    rest = r;
                    Sign::Minus
                } else if rest.starts_with('^') {
                    return Err(Error::Parse(format!("unsupported exponent in `{token}`")));
                } else {
                    Sign::Plus
                };
                letters.push(Letter::new(g, sign));
            }
        }
        Ok(Word::reduce(letters))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters
            .iter()
            .map(|l| match l.sign {
                Sign::Plus => self.names[l.generator.0].clone(),
                Sign::Minus => format!("{}'", self.names[l.generator.0]),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(", "))
    }
}
