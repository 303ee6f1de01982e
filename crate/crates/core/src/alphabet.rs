//! Letters, words, alphabet orders and Lyndon words.
//!
//! Two alphabet families are modelled: finite alphabets `x0, x1, ...` graded
//! by length, and the infinite alphabet `y1, y2, ...` graded by weight
//! (`y_k` has weight `k`). The default orders are `x0 < x1 < ...` and
//! `y1 > y2 > ...`; the [`Letter`] and [`Word`] `Ord` impls follow them.
//! Lyndon queries take their order from an [`Alphabet`] value so that other
//! orders can be used without touching the words themselves.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("invalid letter `{0}`")]
    BadLetter(String),
    #[error("invalid word `{0}`")]
    BadWord(String),
    #[error("`{0}` is not a Lyndon word for this order")]
    NotLyndon(Word),
    #[error("a single letter has no standard factorization")]
    SingleLetter,
    #[error("alphabet must be nonempty and duplicate-free")]
    BadAlphabet,
    #[error("letter {0} does not belong to the alphabet")]
    ForeignLetter(Letter),
}

/// A letter `x_i` (finite alphabet, weight 1) or `y_k` (graded alphabet,
/// weight `k >= 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    X(u32),
    Y(u32),
}

impl Letter {
    pub fn grade(self) -> usize {
        match self {
            Letter::X(_) => 1,
            Letter::Y(k) => k as usize,
        }
    }

    pub fn is_y(self) -> bool {
        matches!(self, Letter::Y(_))
    }

    pub fn index(self) -> u32 {
        match self {
            Letter::X(i) | Letter::Y(i) => i,
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Letter::X(a), Letter::X(b)) => a.cmp(b),
            (Letter::Y(a), Letter::Y(b)) => b.cmp(a),
            (Letter::X(_), Letter::Y(_)) => Ordering::Less,
            (Letter::Y(_), Letter::X(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(i) => write!(f, "x{i}"),
            Letter::Y(k) => write!(f, "y{k}"),
        }
    }
}

impl FromStr for Letter {
    type Err = AlphabetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlphabetError::BadLetter(s.to_string());
        let (head, digits) = s.split_at(s.len().min(1));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: u32 = digits.parse().map_err(|_| bad())?;
        match head {
            "x" => Ok(Letter::X(n)),
            "y" if n >= 1 => Ok(Letter::Y(n)),
            _ => Err(bad()),
        }
    }
}

/// A word of the free monoid. The empty word is the unit `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(x: Letter) -> Self {
        Word(vec![x])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length for `x`-words, weight for `y`-words.
    pub fn grade(&self) -> usize {
        self.0.iter().map(|l| l.grade()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Everything after the first letter.
    pub fn tail(&self) -> Word {
        Word(self.0.get(1..).unwrap_or_default().to_vec())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn push(&mut self, x: Letter) {
        self.0.push(x);
    }

    /// Word `x^n`.
    pub fn power(x: Letter, n: usize) -> Word {
        Word(vec![x; n])
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Number of occurrences of each letter, sorted by letter.
    pub fn multidegree(&self) -> Vec<(Letter, usize)> {
        let mut v = self.0.clone();
        v.sort();
        let mut out: Vec<(Letter, usize)> = Vec::new();
        for x in v {
            match out.last_mut() {
                Some((y, n)) if *y == x => *n += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Order used for canonical output: grade first, then lexicographic.
    pub fn graded_cmp(&self, other: &Word) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = AlphabetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        s.split('.')
            .map(|t| t.trim().parse::<Letter>())
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
            .map_err(|_| AlphabetError::BadWord(s.to_string()))
    }
}

/// Convenience: `x(0)` is the letter `x0`.
pub fn x(i: u32) -> Letter {
    Letter::X(i)
}

/// Convenience: `y(k)` is the letter `y_k`.
pub fn y(k: u32) -> Letter {
    Letter::Y(k)
}

/// Parses a word literal; panics on malformed input (tests and fixtures).
pub fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Kind {
    /// Letters listed in increasing order.
    Finite(Vec<Letter>),
    /// `y1, y2, ...`; `descending` means `y1 > y2 > ...`.
    Graded { descending: bool },
}

/// An alphabet together with its total order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    kind: Kind,
}

impl Alphabet {
    /// `x0 < x1 < ... < x_{n-1}`.
    pub fn x(n: u32) -> Self {
        assert!(n >= 1, "empty alphabet");
        Alphabet { kind: Kind::Finite((0..n).map(Letter::X).collect()) }
    }

    /// A finite alphabet with letters given in increasing order.
    pub fn ordered(letters: Vec<Letter>) -> Result<Self, AlphabetError> {
        let mut sorted = letters.clone();
        sorted.sort();
        sorted.dedup();
        if letters.is_empty() || sorted.len() != letters.len() {
            return Err(AlphabetError::BadAlphabet);
        }
        Ok(Alphabet { kind: Kind::Finite(letters) })
    }

    /// `y1 > y2 > y3 > ...`.
    pub fn y() -> Self {
        Alphabet { kind: Kind::Graded { descending: true } }
    }

    /// `y1 < y2 < y3 < ...`.
    pub fn y_ascending() -> Self {
        Alphabet { kind: Kind::Graded { descending: false } }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.kind, Kind::Graded { .. })
    }

    pub fn contains(&self, l: Letter) -> bool {
        match &self.kind {
            Kind::Finite(v) => v.contains(&l),
            Kind::Graded { .. } => l.is_y(),
        }
    }

    /// Compares two letters of this alphabet.
    pub fn cmp_letters(&self, a: Letter, b: Letter) -> Ordering {
        match &self.kind {
            Kind::Finite(v) => {
                let pos = |l: Letter| v.iter().position(|&m| m == l).unwrap_or(usize::MAX);
                pos(a).cmp(&pos(b))
            }
            Kind::Graded { descending: true } => b.index().cmp(&a.index()),
            Kind::Graded { descending: false } => a.index().cmp(&b.index()),
        }
    }

    /// Lexicographic order induced by the letter order (prefixes are smaller).
    pub fn cmp_words(&self, u: &Word, v: &Word) -> Ordering {
        for (a, b) in u.letters().iter().zip(v.letters()) {
            match self.cmp_letters(*a, *b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        u.len().cmp(&v.len())
    }

    /// Letters of grade at most `max_grade`, in increasing order.
    pub fn letters_up_to(&self, max_grade: usize) -> Vec<Letter> {
        let mut out: Vec<Letter> = match &self.kind {
            Kind::Finite(v) => {
                if max_grade >= 1 {
                    v.clone()
                } else {
                    vec![]
                }
            }
            Kind::Graded { .. } => (1..=max_grade as u32).map(Letter::Y).collect(),
        };
        out.sort_by(|a, b| self.cmp_letters(*a, *b));
        out
    }

    /// All words of grade at most `max_grade`, sorted by grade then by the
    /// alphabet's lexicographic order.
    pub fn words_up_to(&self, max_grade: usize) -> Vec<Word> {
        let letters = self.letters_up_to(max_grade);
        let mut out = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for u in &frontier {
                for &l in &letters {
                    let g = u.grade() + l.grade();
                    if g <= max_grade {
                        let mut v = u.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by(|a, b| a.grade().cmp(&b.grade()).then_with(|| self.cmp_words(a, b)));
        out
    }

    /// Words of grade exactly `g`, in lexicographic order.
    pub fn words_of_grade(&self, g: usize) -> Vec<Word> {
        self.words_up_to(g).into_iter().filter(|u| u.grade() == g).collect()
    }

    /// Lyndon test by the definition: strictly smaller than every proper
    /// nonempty suffix.
    pub fn is_lyndon(&self, u: &Word) -> bool {
        !u.is_empty()
            && (1..u.len()).all(|i| self.cmp_words(u, &u.slice(i, u.len())) == Ordering::Less)
    }

    /// Lyndon words of grade at most `max_grade`, in increasing
    /// lexicographic order.
    ///
    /// Uses Duval's successor iteration over the letters of grade at most
    /// `max_grade` with word length bounded by `max_grade`, then keeps the
    /// words within the grade bound.
    pub fn lyndon_words(&self, max_grade: usize) -> Vec<Word> {
        let letters = self.letters_up_to(max_grade);
        let k = letters.len();
        let n = max_grade;
        let mut out = Vec::new();
        if k == 0 || n == 0 {
            return out;
        }
        // Ranks into `letters`.
        let mut cur: Vec<usize> = vec![0];
        loop {
            let word = Word(cur.iter().map(|&r| letters[r]).collect());
            if word.grade() <= max_grade {
                out.push(word);
            }
            // Extend periodically to length n, then strip maximal letters.
            let m = cur.len();
            while cur.len() < n {
                let c = cur[cur.len() - m];
                cur.push(c);
            }
            while cur.last() == Some(&(k - 1)) {
                cur.pop();
            }
            match cur.last_mut() {
                None => break,
                Some(last) => *last += 1,
            }
        }
        out
    }

    /// Standard factorization `(l1, l2)` of a Lyndon word of length >= 2:
    /// `l2` is the longest proper suffix that is Lyndon.
    pub fn standard_factorization(&self, l: &Word) -> Result<(Word, Word), AlphabetError> {
        if !self.is_lyndon(l) {
            return Err(AlphabetError::NotLyndon(l.clone()));
        }
        if l.len() < 2 {
            return Err(AlphabetError::SingleLetter);
        }
        let i = (1..l.len())
            .find(|&i| self.is_lyndon(&l.slice(i, l.len())))
            .expect("the last letter is a Lyndon suffix");
        Ok((l.slice(0, i), l.slice(i, l.len())))
    }

    /// Factorization into a nonincreasing sequence of Lyndon words (Duval).
    pub fn lyndon_factorization(&self, u: &Word) -> Vec<Word> {
        let s = u.letters();
        let n = s.len();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let mut j = i + 1;
            let mut k = i;
            while j < n {
                match self.cmp_letters(s[k], s[j]) {
                    Ordering::Less => k = i,
                    Ordering::Equal => k += 1,
                    Ordering::Greater => break,
                }
                j += 1;
            }
            while i <= k {
                out.push(Word(s[i..i + j - k].to_vec()));
                i += j - k;
            }
        }
        out
    }
}

/// The letter correspondence `y_k -> x0^{k-1} x1`, extended to words.
pub fn pi_x(u: &Word) -> Word {
    let mut out = Vec::new();
    for &l in u.letters() {
        match l {
            Letter::Y(k) => {
                out.extend(std::iter::repeat(Letter::X(0)).take(k as usize - 1));
                out.push(Letter::X(1));
            }
            Letter::X(_) => out.push(l),
        }
    }
    Word(out)
}

/// Inverse of [`pi_x`] on `{x0, x1}`-words ending in `x1` (and on `1`);
/// `None` for words ending in `x0`, which lie in the kernel.
pub fn pi_y_word(u: &Word) -> Option<Word> {
    let mut out = Vec::new();
    let mut zeros = 0u32;
    for &l in u.letters() {
        match l {
            Letter::X(0) => zeros += 1,
            Letter::X(1) => {
                out.push(Letter::Y(zeros + 1));
                zeros = 0;
            }
            _ => return None,
        }
    }
    (zeros == 0).then_some(Word(out))
}
