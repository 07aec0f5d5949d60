//! Cycle-lemma machinery on extended words: cyclic pair deletion (`ind`),
//! rotation by the last up-step block (`shift`), the projection onto labeled
//! Dyck words, and index candidates for prefix words.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dyck::{format_steps, label_counts, parse_steps, LabeledDyckWord, Step};
use crate::error::{Error, Result};

fn invariant(pos: usize, msg: impl Into<String>) -> Error {
    Error::WordInvariant {
        pos,
        msg: msg.into(),
    }
}

/// Shared checks: starts with `U`, exactly `ups` up steps, labels at most
/// `k`, weakly decreasing labels on consecutive down steps.
fn check_extended(steps: &[Step], ups: usize, k: u32) -> Result<()> {
    if steps.first() != Some(&Step::Up) {
        return Err(invariant(1, "extended words start with U"));
    }
    let found = steps.iter().filter(|s| s.is_up()).count();
    if found != ups {
        return Err(invariant(
            steps.len(),
            format!("expected {ups} up steps, found {found}"),
        ));
    }
    for (idx, pair) in steps.windows(2).enumerate() {
        if let (Step::Down(a), Step::Down(b)) = (pair[0], pair[1]) {
            if b > a {
                return Err(invariant(
                    idx + 2,
                    "labels within a down-run must weakly decrease",
                ));
            }
        }
    }
    if let Some(idx) = steps.iter().position(|s| s.label().is_some_and(|l| l > k)) {
        return Err(invariant(idx + 1, format!("label exceeds k={k}")));
    }
    Ok(())
}

/// A word of length `2n + 1` with `n + 1` up steps that starts with `U`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedWord {
    steps: Vec<Step>,
    k: u32,
}

impl ExtendedWord {
    pub fn new(steps: Vec<Step>, k: u32) -> Result<Self> {
        if steps.len().is_multiple_of(2) {
            return Err(invariant(steps.len(), "extended words have odd length"));
        }
        let n = steps.len() / 2;
        check_extended(&steps, n + 1, k)?;
        Ok(Self { steps, k })
    }

    pub fn parse(text: &str, k: u32) -> Result<Self> {
        Self::new(parse_steps(text)?, k)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn n(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn label_counts(&self) -> Vec<usize> {
        label_counts(&self.steps, self.k)
    }
}

impl fmt::Display for ExtendedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_steps(&self.steps))
    }
}

/// A word of length `2n - i + 1` with `n + 1` up steps that starts with `U`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefixExtendedWord {
    steps: Vec<Step>,
    n: usize,
    i: usize,
    k: u32,
}

impl PrefixExtendedWord {
    pub fn new(steps: Vec<Step>, n: usize, i: usize, k: u32) -> Result<Self> {
        if i > n || steps.len() != 2 * n - i + 1 {
            return Err(invariant(
                steps.len(),
                format!(
                    "expected length {} for n={n}, i={i}",
                    (2 * n + 1).saturating_sub(i)
                ),
            ));
        }
        check_extended(&steps, n + 1, k)?;
        Ok(Self { steps, n, i, k })
    }

    pub fn parse(text: &str, n: usize, i: usize, k: u32) -> Result<Self> {
        Self::new(parse_steps(text)?, n, i, k)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

impl fmt::Display for PrefixExtendedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_steps(&self.steps))
    }
}

/// Calls `visit` on every word that starts with `U`, has `ups` up steps and
/// `downs` down steps, and keeps labels weakly decreasing along each down
/// run. Order: `D0 < ... < Dk < U` at each position.
fn visit_extended(ups: usize, downs: usize, k: u32, visit: &mut impl FnMut(&[Step])) {
    fn go(
        ups: usize,
        downs: usize,
        k: u32,
        last: Option<u32>,
        buf: &mut Vec<Step>,
        visit: &mut impl FnMut(&[Step]),
    ) {
        if ups == 0 && downs == 0 {
            visit(buf);
            return;
        }
        if downs > 0 {
            for l in 0..=last.unwrap_or(k) {
                buf.push(Step::Down(l));
                go(ups, downs - 1, k, Some(l), buf, visit);
                buf.pop();
            }
        }
        if ups > 0 {
            buf.push(Step::Up);
            go(ups - 1, downs, k, None, buf, visit);
            buf.pop();
        }
    }
    let mut buf = vec![Step::Up];
    go(ups - 1, downs, k, None, &mut buf, visit);
}

/// All of `EW_n(k)`.
pub fn enumerate_ew(n: usize, k: u32) -> Vec<ExtendedWord> {
    let mut out = Vec::new();
    visit_extended(n + 1, n, k, &mut |s| {
        out.push(ExtendedWord {
            steps: s.to_vec(),
            k,
        })
    });
    out
}

/// All prefix-extended words for `(n, i, k)`.
pub fn enumerate_prefix_ew(n: usize, i: usize, k: u32) -> Result<Vec<PrefixExtendedWord>> {
    if i > n {
        return Err(Error::domain(format!("height {i} exceeds n={n}")));
    }
    let mut out = Vec::new();
    visit_extended(n + 1, n - i, k, &mut |s| {
        out.push(PrefixExtendedWord {
            steps: s.to_vec(),
            n,
            i,
            k,
        })
    });
    Ok(out)
}

/// Which eligible `(U, D)` pair the deletion process removes next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeletionOrder {
    LeftmostFirst,
    RightmostFirst,
}

/// Repeatedly deletes a cyclically adjacent `U` followed by a down step until
/// `keep` letters remain; returns the original positions of the survivors.
fn delete_pairs(steps: &[Step], keep: usize, order: DeletionOrder) -> Vec<usize> {
    let mut live: Vec<usize> = (0..steps.len()).collect();
    while live.len() > keep {
        let len = live.len();
        let eligible = |p: usize| steps[live[p]].is_up() && !steps[live[(p + 1) % len]].is_up();
        let p = match order {
            DeletionOrder::LeftmostFirst => (0..len).find(|&p| eligible(p)),
            DeletionOrder::RightmostFirst => (0..len).rev().find(|&p| eligible(p)),
        }
        .expect("more up steps than down steps leaves a deletable pair");
        let q = (p + 1) % len;
        // remove the later index first so the earlier one stays valid
        live.remove(p.max(q));
        live.remove(p.min(q));
    }
    live
}

fn up_ordinal(steps: &[Step], position: usize) -> usize {
    steps[..=position].iter().filter(|s| s.is_up()).count()
}

/// `ind(w)` with the given deletion order.
pub fn ind_with(w: &ExtendedWord, order: DeletionOrder) -> usize {
    let live = delete_pairs(&w.steps, 1, order);
    up_ordinal(&w.steps, live[0])
}

/// The ordinal (1-based, among up steps) of the up step that survives cyclic
/// deletion of `U D*` pairs.
pub fn ind(w: &ExtendedWord) -> usize {
    ind_with(w, DeletionOrder::LeftmostFirst)
}

/// Rotates the word so that it starts at its last up step.
pub fn shift(w: &ExtendedWord) -> ExtendedWord {
    let last = w
        .steps
        .iter()
        .rposition(|s| s.is_up())
        .expect("extended words contain an up step");
    let mut steps = w.steps[last..].to_vec();
    steps.extend_from_slice(&w.steps[..last]);
    ExtendedWord { steps, k: w.k }
}

/// The unique `j` in `0..=n` for which `shift^j(w)` is a labeled Dyck word
/// followed by `U`, together with that Dyck word.
pub fn project(w: &ExtendedWord) -> Result<(LabeledDyckWord, usize)> {
    let mut cur = w.clone();
    for j in 0..=w.n() {
        let (last, body) = cur.steps.split_last().expect("nonempty");
        if last.is_up() {
            if let Ok(word) = LabeledDyckWord::new(body.to_vec(), w.k) {
                return Ok((word, j));
            }
        }
        cur = shift(&cur);
    }
    Err(invariant(1, "no rotation yields a Dyck word"))
}

/// Every up-step ordinal that can be among the `i + 1` survivors of some
/// maximal cyclic deletion sequence.
pub fn index_candidates(w: &PrefixExtendedWord) -> Vec<usize> {
    let steps = &w.steps;
    let len = steps.len();
    assert!(len <= 128, "words longer than 128 letters are out of range");
    let full: u128 = if len == 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    };
    let mut seen = HashSet::new();
    let mut survivors = 0u128;
    let mut stack = vec![full];
    while let Some(mask) = stack.pop() {
        if !seen.insert(mask) {
            continue;
        }
        let live: Vec<usize> = (0..len).filter(|&b| mask >> b & 1 == 1).collect();
        if live.len() == w.i + 1 {
            survivors |= mask;
            continue;
        }
        let n = live.len();
        for p in 0..n {
            let q = (p + 1) % n;
            if steps[live[p]].is_up() && !steps[live[q]].is_up() {
                stack.push(mask & !(1 << live[p]) & !(1 << live[q]));
            }
        }
    }
    (0..len)
        .filter(|&b| survivors >> b & 1 == 1)
        .map(|b| up_ordinal(steps, b))
        .collect()
}

/// Inserts `i` copies of `D0` immediately before the `j`-th up step. For
/// `j = 1` the copies go at the end, which is the same place cyclically and
/// keeps the word starting with `U`.
pub fn insert_zeros_before_up(w: &PrefixExtendedWord, j: usize) -> Result<ExtendedWord> {
    let ups: Vec<usize> = (0..w.steps.len()).filter(|&p| w.steps[p].is_up()).collect();
    if j < 1 || j > ups.len() {
        return Err(Error::domain(format!("no up step with ordinal {j}")));
    }
    let zeros = std::iter::repeat_n(Step::Down(0), w.i);
    let mut steps = w.steps.clone();
    if j == 1 {
        steps.extend(zeros);
    } else {
        let at = ups[j - 1];
        steps.splice(at..at, zeros);
    }
    ExtendedWord::new(steps, w.k)
}

/// A uniformly placed extended word: `U` first, the remaining `n` up steps
/// at random positions, random labels sorted downward inside each run.
pub fn random_extended_word<R: Rng>(rng: &mut R, n: usize, k: u32) -> ExtendedWord {
    let mut body: Vec<Step> = (0..n)
        .map(|_| Step::Up)
        .chain((0..n).map(|_| Step::Down(rng.gen_range(0..=k))))
        .collect();
    body.shuffle(rng);
    let mut steps = vec![Step::Up];
    steps.extend(body);
    let mut start = 0;
    while start < steps.len() {
        if steps[start].is_up() {
            start += 1;
            continue;
        }
        let end = (start..steps.len())
            .find(|&p| steps[p].is_up())
            .unwrap_or(steps.len());
        steps[start..end].sort_by_key(|s| std::cmp::Reverse(s.label()));
        start = end;
    }
    ExtendedWord::new(steps, k).expect("construction respects every invariant")
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn word() -> impl Strategy<Value = ExtendedWord> {
        (any::<u64>(), 0usize..=7, 1u32..=3).prop_map(|(seed, n, k)| {
            random_extended_word(&mut ChaCha8Rng::seed_from_u64(seed), n, k)
        })
    }

    proptest! {
        #[test]
        fn deletion_order_does_not_matter(w in word()) {
            prop_assert_eq!(
                ind_with(&w, DeletionOrder::LeftmostFirst),
                ind_with(&w, DeletionOrder::RightmostFirst)
            );
        }

        #[test]
        fn shift_advances_ind(w in word()) {
            let m = w.n() + 1;
            prop_assert_eq!(ind(&shift(&w)) % m, (ind(&w) + 1) % m);
        }

        #[test]
        fn projection_preserves_labels_and_inverts_shift(w in word()) {
            let (image, j) = project(&w).unwrap();
            prop_assert_eq!(image.label_counts(), w.label_counts());
            let mut cur = w.clone();
            for _ in 0..j {
                cur = shift(&cur);
            }
            let mut expected = image.steps().to_vec();
            expected.push(Step::Up);
            prop_assert_eq!(cur.steps(), &expected[..]);
        }

        #[test]
        fn text_round_trip(w in word()) {
            prop_assert_eq!(ExtendedWord::parse(&w.to_string(), w.k()).unwrap(), w);
        }
    }
}
