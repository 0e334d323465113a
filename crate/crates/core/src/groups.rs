//! Presentations, normal-form group backends and finite windows.
//!
//! Two backends have a solvable word problem here: free abelian groups `Z^d`
//! (normal form `a_1^{i_1} ... a_d^{i_d}`) and cyclic groups `Z/m` (exponent
//! in the symmetric range `(-ceil(m/2), floor(m/2)]`). Baumslag-Solitar
//! groups only get a [`Presentation`].
//!
//! A [`Window`] is a finite, inversion-closed set of elements containing the
//! identity, with a dense multiplication table restricted to the window.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::words::{Alphabet, Letter, Sign, Word};
use crate::{Error, Result};

/// `<S | R>` with named generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    name: String,
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(name: impl Into<String>, alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if r.is_empty() {
                return Err(Error::InvalidArgument("relators must be non-empty".into()));
            }
            if Word::reduce(r.letters().iter().copied()) != *r {
                return Err(Error::InvalidArgument("relators must be reduced".into()));
            }
            if r.max_generator().is_some_and(|g| g >= alphabet.len()) {
                return Err(Error::InvalidArgument(
                    "relator uses an unknown generator".into(),
                ));
            }
        }
        Ok(Self {
            name: name.into(),
            alphabet,
            relators,
        })
    }

    /// `Z^d`: all pairwise commutators `a_i a_j a_i^-1 a_j^-1`, `i < j`.
    pub fn free_abelian(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        let mut relators = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                relators.push(commutator(i, j));
            }
        }
        Self::new(format!("z^{d}"), Alphabet::standard(d), relators)
    }

    /// `<a | a^m>`.
    pub fn cyclic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("order must be at least 1".into()));
        }
        Self::new(
            format!("cyclic:{m}"),
            Alphabet::standard(1),
            vec![Word::power(0, m as i64)],
        )
    }

    /// `BS(m, n) = <a, b | b^-1 a^m b a^-n>`.
    pub fn baumslag_solitar(m: i64, n: i64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument(
                "BS(m, n) needs nonzero m and n".into(),
            ));
        }
        let (a, b) = (0, 1);
        let relator = Word::letter(Letter::neg(b))
            .multiply(&Word::power(a, m))
            .multiply(&Word::generator(b))
            .multiply(&Word::power(a, -n));
        Self::new(format!("bs:{m}:{n}"), Alphabet::standard(2), vec![relator])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// `a_i a_j a_i^-1 a_j^-1`.
pub fn commutator(i: usize, j: usize) -> Word {
    Word::reduce([
        Letter::pos(i),
        Letter::pos(j),
        Letter::neg(i),
        Letter::neg(j),
    ])
}

/// Text form `a, b | a b a' b'` (relators comma-separated). The name of a
/// parsed presentation is its own text.
impl FromStr for Presentation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (gens, rels) = s.split_once('|').ok_or_else(|| {
            Error::Parse(format!("presentation `{s}` needs `generators | relators`"))
        })?;
        let names: Vec<&str> = gens
            .split(',')
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .collect();
        let alphabet = Alphabet::new(&names)?;
        let relators = rels
            .split(',')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| alphabet.parse_word(r))
            .collect::<Result<Vec<_>>>()?;
        let mut p = Self::new(String::new(), alphabet, relators)?;
        p.name = p.to_string();
        Ok(p)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| self.alphabet.format_word(r))
            .collect();
        write!(f, "{} | {}", self.alphabet, rels.join(", "))
    }
}

/// A group element as an exponent vector in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<i64>);

impl Element {
    pub fn exponents(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    FreeAbelian { rank: usize },
    Cyclic { order: u64 },
}

/// A presentation together with canonical normal forms; the normal-form word
/// of an element is the section `sigma` into the free group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalFormGroup {
    presentation: Presentation,
    backend: Backend,
}

impl NormalFormGroup {
    pub fn free_abelian(d: usize) -> Result<Self> {
        Ok(Self {
            presentation: Presentation::free_abelian(d)?,
            backend: Backend::FreeAbelian { rank: d },
        })
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Ok(Self {
            presentation: Presentation::cyclic(m)?,
            backend: Backend::Cyclic { order: m },
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn name(&self) -> &str {
        self.presentation.name()
    }

    pub fn rank(&self) -> usize {
        self.presentation.rank()
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    fn canonical(&self, mut v: Vec<i64>) -> Element {
        if let Backend::Cyclic { order } = self.backend {
            let m = order as i64;
            let hi = m / 2;
            let mut e = v[0].rem_euclid(m);
            if e > hi {
                e -= m;
            }
            v[0] = e;
        }
        Element(v)
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Element {
        self.canonical(g.0.iter().zip(&h.0).map(|(x, y)| x + y).collect())
    }

    pub fn inverse(&self, g: &Element) -> Element {
        self.canonical(g.0.iter().map(|x| -x).collect())
    }

    pub fn generator(&self, s: usize) -> Element {
        let mut v = vec![0; self.rank()];
        v[s] = 1;
        self.canonical(v)
    }

    /// Image of a free-group word.
    pub fn element_of(&self, w: &Word) -> Element {
        self.canonical(w.exponent_sums(self.rank()))
    }

    /// Section `sigma(g)` with `sigma(1)` empty and `sigma(g^-1) = sigma(g)^-1`
    /// away from involutions. In `Z^d`, elements whose first nonzero exponent
    /// is positive get `a_1^{i_1} ... a_d^{i_d}`; the others get the inverse
    /// of their inverse's word, i.e. the generators in reverse order.
    pub fn section(&self, g: &Element) -> Word {
        let ordered = |v: &[i64]| {
            Word::reduce(
                v.iter()
                    .enumerate()
                    .flat_map(|(s, &e)| Word::power(s, e).letters().to_vec()),
            )
        };
        match g.0.iter().find(|&&e| e != 0) {
            Some(&e) if e < 0 && g.0.len() > 1 => ordered(&self.inverse(g).0).invert(),
            _ => ordered(&g.0),
        }
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        g.0.iter().all(|&e| e == 0)
    }

    /// `g^2 = 1` and `g != 1`.
    pub fn is_involution(&self, g: &Element) -> bool {
        !self.is_identity(g) && self.is_identity(&self.multiply(g, g))
    }

    pub fn format_element(&self, g: &Element) -> String {
        self.presentation.alphabet().format_word(&self.section(g))
    }
}

/// Built-in groups addressable by name.
#[derive(Debug, Clone)]
pub enum BuiltinGroup {
    NormalForm(NormalFormGroup),
    PresentationOnly(Presentation),
}

impl BuiltinGroup {
    pub fn presentation(&self) -> &Presentation {
        match self {
            BuiltinGroup::NormalForm(g) => g.presentation(),
            BuiltinGroup::PresentationOnly(p) => p,
        }
    }
}

/// Parses `z^d`, `cyclic:m` or `bs:m:n`.
pub fn builtin(name: &str) -> Result<BuiltinGroup> {
    let bad = || {
        Error::Parse(format!(
            "unknown group `{name}` (expected z^d, cyclic:m or bs:m:n)"
        ))
    };
    if let Some(d) = name.strip_prefix("z^") {
        let d: usize = d.parse().map_err(|_| bad())?;
        return Ok(BuiltinGroup::NormalForm(NormalFormGroup::free_abelian(d)?));
    }
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["cyclic", m] => {
            let m: u64 = m.parse().map_err(|_| bad())?;
            Ok(BuiltinGroup::NormalForm(NormalFormGroup::cyclic(m)?))
        }
        ["bs", m, n] => {
            let m: i64 = m.parse().map_err(|_| bad())?;
            let n: i64 = n.parse().map_err(|_| bad())?;
            Ok(BuiltinGroup::PresentationOnly(
                Presentation::baumslag_solitar(m, n)?,
            ))
        }
        _ => Err(bad()),
    }
}

pub fn builtin_normal_form(name: &str) -> Result<NormalFormGroup> {
    match builtin(name)? {
        BuiltinGroup::NormalForm(g) => Ok(g),
        BuiltinGroup::PresentationOnly(p) => Err(Error::InvalidArgument(format!(
            "group `{}` has no normal-form backend",
            p.name()
        ))),
    }
}

/// An admissible pair `(g, h)` with `g`, `h`, `gh` all in the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pair {
    pub g: usize,
    pub h: usize,
    pub gh: usize,
}

/// An admissible triple: `g, h, k, gh, hk, ghk` all in the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub g: usize,
    pub h: usize,
    pub k: usize,
    pub gh: usize,
    pub hk: usize,
    pub ghk: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    group: NormalFormGroup,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    inverse: Vec<usize>,
    products: Vec<Option<usize>>,
}

impl Window {
    /// Window over an explicit element list; the identity is moved to index 0.
    pub fn from_elements(group: &NormalFormGroup, elements: Vec<Element>) -> Result<Self> {
        let mut elems: Vec<Element> = Vec::with_capacity(elements.len() + 1);
        elems.push(group.identity());
        for e in elements {
            if !elems.contains(&e) {
                elems.push(e);
            }
        }
        let index: HashMap<Element, usize> = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let inverse = elems
            .iter()
            .map(|e| {
                index.get(&group.inverse(e)).copied().ok_or_else(|| {
                    Error::InvalidArgument("window is not closed under inversion".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let n = elems.len();
        let mut products = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                products[i * n + j] = index.get(&group.multiply(&elems[i], &elems[j])).copied();
            }
        }
        Ok(Self {
            group: group.clone(),
            elements: elems,
            index,
            inverse,
            products,
        })
    }

    pub fn group(&self) -> &NormalFormGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index of the identity (always 0).
    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.products[i * self.len() + j]
    }

    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        let n = self.len();
        (0..n).flat_map(move |g| {
            (0..n).filter_map(move |h| self.product(g, h).map(|gh| Pair { g, h, gh }))
        })
    }

    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.pairs().flat_map(move |p| {
            (0..self.len()).filter_map(move |k| {
                let hk = self.product(p.h, k)?;
                let ghk = self.product(p.gh, k)?;
                Some(Triple {
                    g: p.g,
                    h: p.h,
                    k,
                    gh: p.gh,
                    hk,
                    ghk,
                })
            })
        })
    }

    /// Dense index of an admissible pair among all `n^2` slots.
    pub fn pair_slot(&self, g: usize, h: usize) -> usize {
        g * self.len() + h
    }
}

/// All elements reachable by products of at most `radius` generators and
/// inverses, in breadth-first order.
pub fn ball(group: &NormalFormGroup, radius: usize) -> Window {
    let mut seen: HashMap<Element, ()> = HashMap::new();
    let mut order = vec![group.identity()];
    seen.insert(group.identity(), ());
    let mut frontier = vec![group.identity()];
    let steps: Vec<Element> = (0..group.rank())
        .flat_map(|s| {
            let g = group.generator(s);
            [g.clone(), group.inverse(&g)]
        })
        .collect();
    for _ in 0..radius {
        let mut next = Vec::new();
        for e in &frontier {
            for s in &steps {
                let p = group.multiply(e, s);
                if seen.insert(p.clone(), ()).is_none() {
                    order.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Window::from_elements(group, order).expect("balls are inversion-closed")
}

/// Sign-aware letter for the `s`-th generator.
pub fn generator_letter(s: usize, sign: Sign) -> Letter {
    Letter::new(s, sign)
}
