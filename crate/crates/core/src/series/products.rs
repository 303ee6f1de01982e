use std::collections::{BTreeMap, HashMap};

use crate::alphabet::{Letter, Word};

type Counts = BTreeMap<Word, u64>;

/// `u ⧢ v` as word multiplicities.
pub fn shuffle_words(u: &Word, v: &Word) -> Counts {
    merge_words(u, v, false)
}

/// `u ⧣ v` as word multiplicities; both words must be over `Y`.
pub fn stuffle_words(u: &Word, v: &Word) -> Counts {
    merge_words(u, v, true)
}

/// Memoized recursion on suffix pairs `(u[i..], v[j..])`:
/// `au ⧢ bv = a(u ⧢ bv) + b(au ⧢ v)` plus `y_{a+b}(u ⧣ v)` for stuffle.
fn merge_words(u: &Word, v: &Word, contract: bool) -> Counts {
    let (a, b) = (u.letters(), v.letters());
    let mut memo: HashMap<(usize, usize), Counts> = HashMap::new();
    merge_from(a, b, 0, 0, contract, &mut memo)
}

fn merge_from(
    a: &[Letter],
    b: &[Letter],
    i: usize,
    j: usize,
    contract: bool,
    memo: &mut HashMap<(usize, usize), Counts>,
) -> Counts {
    if let Some(hit) = memo.get(&(i, j)) {
        return hit.clone();
    }
    let out = if i == a.len() {
        BTreeMap::from([(Word::new(b[j..].to_vec()), 1)])
    } else if j == b.len() {
        BTreeMap::from([(Word::new(a[i..].to_vec()), 1)])
    } else {
        let mut acc = Counts::new();
        prepend_into(&mut acc, a[i], merge_from(a, b, i + 1, j, contract, memo));
        prepend_into(&mut acc, b[j], merge_from(a, b, i, j + 1, contract, memo));
        if contract {
            if let (Letter::Y(p), Letter::Y(q)) = (a[i], b[j]) {
                prepend_into(&mut acc, Letter::Y(p + q), merge_from(a, b, i + 1, j + 1, contract, memo));
            }
        }
        acc
    };
    memo.insert((i, j), out.clone());
    out
}

fn prepend_into(acc: &mut Counts, x: Letter, part: Counts) {
    for (w, n) in part {
        let mut v = Vec::with_capacity(w.len() + 1);
        v.push(x);
        v.extend_from_slice(w.letters());
        *acc.entry(Word::new(v)).or_insert(0) += n;
    }
}
