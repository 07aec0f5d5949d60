//! Labeled Dyck words, their doubly labeled and prefix variants, and
//! exhaustive enumerators.
//!
//! Words are the canonical representation; a step is either `U` or a down
//! step `D<label>`. Text form: `U` / `D<decimal>` tokens with no separators,
//! optionally followed by `|` and a comma-separated list of extra labels.
//!
//! Enumerators emit words in lexicographic order with down steps before up
//! steps and smaller labels first (`D0 < D1 < ... < Dk < U`).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down(u32),
}

impl Step {
    pub fn is_up(self) -> bool {
        matches!(self, Step::Up)
    }

    pub fn label(self) -> Option<u32> {
        match self {
            Step::Up => None,
            Step::Down(l) => Some(l),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Up => f.write_str("U"),
            Step::Down(l) => write!(f, "D{l}"),
        }
    }
}

pub fn format_steps(steps: &[Step]) -> String {
    steps.iter().map(|s| s.to_string()).collect()
}

/// Tokenizes `("U" | "D"<decimal>)*`. Positions in errors are 1-based
/// character offsets.
pub fn parse_steps(text: &str) -> Result<Vec<Step>> {
    let bytes = text.as_bytes();
    let mut steps = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        match bytes[pos] {
            b'U' => {
                steps.push(Step::Up);
                pos += 1;
            }
            b'D' => {
                let start = pos + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    return Err(Error::WordSyntax {
                        pos: pos + 1,
                        msg: "D must be followed by a decimal label".into(),
                    });
                }
                let label = text[start..end]
                    .parse::<u32>()
                    .map_err(|e| Error::WordSyntax {
                        pos: start + 1,
                        msg: e.to_string(),
                    })?;
                steps.push(Step::Down(label));
                pos = end;
            }
            other => {
                return Err(Error::WordSyntax {
                    pos: pos + 1,
                    msg: format!("unexpected character {:?}", other as char),
                })
            }
        }
    }
    Ok(steps)
}

fn parse_extras(text: &str) -> Result<Vec<u32>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(i, t)| {
            t.parse::<u32>().map_err(|e| Error::WordSyntax {
                pos: i + 1,
                msg: format!("extra label {t:?}: {e}"),
            })
        })
        .collect()
}

fn invariant(pos: usize, msg: impl Into<String>) -> Error {
    Error::WordInvariant {
        pos,
        msg: msg.into(),
    }
}

/// Checks labels, the prefix (height) condition, and weak decrease inside
/// down runs. Returns the final height. Positions are 1-based step indices.
fn check_steps(steps: &[Step], k: u32) -> Result<usize> {
    let mut height = 0usize;
    let mut prev: Option<u32> = None;
    for (idx, &s) in steps.iter().enumerate() {
        let pos = idx + 1;
        match s {
            Step::Up => {
                height += 1;
                prev = None;
            }
            Step::Down(l) => {
                if l > k {
                    return Err(invariant(pos, format!("label {l} exceeds k={k}")));
                }
                if height == 0 {
                    return Err(invariant(pos, "path goes below the axis"));
                }
                if let Some(p) = prev {
                    if l > p {
                        return Err(invariant(
                            pos,
                            "labels within a down-run must weakly decrease",
                        ));
                    }
                }
                height -= 1;
                prev = Some(l);
            }
        }
    }
    Ok(height)
}

fn count_ups(steps: &[Step]) -> usize {
    steps.iter().filter(|s| s.is_up()).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledDyckWord {
    steps: Vec<Step>,
    k: u32,
}

impl LabeledDyckWord {
    pub fn new(steps: Vec<Step>, k: u32) -> Result<Self> {
        let height = check_steps(&steps, k)?;
        if height != 0 {
            return Err(invariant(steps.len(), "path does not return to the axis"));
        }
        Ok(Self { steps, k })
    }

    pub fn parse(text: &str, k: u32) -> Result<Self> {
        if let Some(bar) = text.find('|') {
            return Err(Error::WordSyntax {
                pos: bar + 1,
                msg: "extra labels are only allowed on doubly labeled words".into(),
            });
        }
        Self::new(parse_steps(text)?, k)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Semilength (number of up steps).
    pub fn n(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn zero_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Down(0)).count()
    }

    /// Number of down steps carrying each label `0..=k`.
    pub fn label_counts(&self) -> Vec<usize> {
        label_counts(&self.steps, self.k)
    }

    /// Lengths of the maximal down runs following each up step, in order.
    pub fn run_lengths(&self) -> Vec<usize> {
        let mut runs = Vec::with_capacity(self.n());
        for &s in &self.steps {
            match s {
                Step::Up => runs.push(0),
                Step::Down(_) => *runs.last_mut().expect("word starts with U") += 1,
            }
        }
        runs
    }
}

impl fmt::Display for LabeledDyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_steps(&self.steps))
    }
}

pub fn label_counts(steps: &[Step], k: u32) -> Vec<usize> {
    let mut counts = vec![0; k as usize + 1];
    for s in steps {
        if let Step::Down(l) = s {
            counts[*l as usize] += 1;
        }
    }
    counts
}

/// A labeled Dyck word plus a weakly increasing second label in `1..=k` on
/// every up step and every `D0` step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoublyLabeledDyckWord {
    base: LabeledDyckWord,
    extra: Vec<u32>,
}

impl DoublyLabeledDyckWord {
    pub fn new(base: LabeledDyckWord, extra: Vec<u32>) -> Result<Self> {
        let eligible = base.n() + base.zero_count();
        if extra.len() != eligible {
            return Err(invariant(
                extra.len().min(eligible) + 1,
                format!("expected {eligible} extra labels, found {}", extra.len()),
            ));
        }
        for (i, &e) in extra.iter().enumerate() {
            if e < 1 || e > base.k {
                return Err(invariant(
                    i + 1,
                    format!("extra label {e} outside 1..={}", base.k),
                ));
            }
            if i > 0 && extra[i - 1] > e {
                return Err(invariant(i + 1, "extra labels must weakly increase"));
            }
        }
        Ok(Self { base, extra })
    }

    pub fn parse(text: &str, k: u32) -> Result<Self> {
        let (word, extras) = text.split_once('|').ok_or_else(|| Error::WordSyntax {
            pos: text.len() + 1,
            msg: "doubly labeled words need '|' and extra labels".into(),
        })?;
        let base = LabeledDyckWord::new(parse_steps(word)?, k)?;
        Self::new(base, parse_extras(extras)?)
    }

    pub fn base(&self) -> &LabeledDyckWord {
        &self.base
    }

    pub fn extra(&self) -> &[u32] {
        &self.extra
    }
}

impl fmt::Display for DoublyLabeledDyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let extras: Vec<String> = self.extra.iter().map(|e| e.to_string()).collect();
        write!(f, "{}|{}", self.base, extras.join(","))
    }
}

/// Either kind of word, as produced by [`parse_word`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedWord {
    Labeled(LabeledDyckWord),
    Doubly(DoublyLabeledDyckWord),
}

/// Parses a labeled word, or a doubly labeled one when the text carries a
/// `|` extra channel.
pub fn parse_word(text: &str, k: u32) -> Result<ParsedWord> {
    if text.contains('|') {
        DoublyLabeledDyckWord::parse(text, k).map(ParsedWord::Doubly)
    } else {
        LabeledDyckWord::parse(text, k).map(ParsedWord::Labeled)
    }
}

/// A labeled Dyck prefix with `n` up steps ending at height `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPrefixWord {
    steps: Vec<Step>,
    k: u32,
    height: usize,
}

impl DyckPrefixWord {
    pub fn new(steps: Vec<Step>, k: u32, height: usize) -> Result<Self> {
        let end = check_steps(&steps, k)?;
        if end != height {
            return Err(invariant(
                steps.len(),
                format!("prefix ends at height {end}, expected {height}"),
            ));
        }
        Ok(Self { steps, k, height })
    }

    pub fn parse(text: &str, k: u32, height: usize) -> Result<Self> {
        Self::new(parse_steps(text)?, k, height)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn n(&self) -> usize {
        count_ups(&self.steps)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn label_counts(&self) -> Vec<usize> {
        label_counts(&self.steps, self.k)
    }

    /// The full Dyck word obtained by closing the prefix with `D0` steps.
    pub fn completed(&self) -> LabeledDyckWord {
        let mut steps = self.steps.clone();
        steps.extend(std::iter::repeat_n(Step::Down(0), self.height));
        LabeledDyckWord::new(steps, self.k).expect("closing with D0 keeps every invariant")
    }
}

impl fmt::Display for DyckPrefixWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_steps(&self.steps))
    }
}

/// Restriction on the down-step labels of enumerated words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelFilter {
    None,
    /// Exactly this many `D0` steps.
    Zeros(usize),
    /// Exactly `a_j` steps `Dj` for each `j in 0..=k`.
    Composition(Vec<usize>),
}

/// Remaining label budget during a walk.
#[derive(Clone)]
enum Budget {
    Free,
    Zeros { zeros: usize, others: usize },
    Counts(Vec<usize>),
}

impl Budget {
    fn allows(&self, label: u32) -> bool {
        match self {
            Budget::Free => true,
            Budget::Zeros { zeros, others } => {
                if label == 0 {
                    *zeros > 0
                } else {
                    *others > 0
                }
            }
            Budget::Counts(c) => c[label as usize] > 0,
        }
    }

    fn take(&mut self, label: u32) {
        match self {
            Budget::Free => {}
            Budget::Zeros { zeros, others } => {
                if label == 0 {
                    *zeros -= 1
                } else {
                    *others -= 1
                }
            }
            Budget::Counts(c) => c[label as usize] -= 1,
        }
    }

    fn give(&mut self, label: u32) {
        match self {
            Budget::Free => {}
            Budget::Zeros { zeros, others } => {
                if label == 0 {
                    *zeros += 1
                } else {
                    *others += 1
                }
            }
            Budget::Counts(c) => c[label as usize] += 1,
        }
    }
}

struct Walker<F: FnMut(&[Step])> {
    ups: usize,
    downs: usize,
    k: u32,
    budget: Budget,
    buf: Vec<Step>,
    visit: F,
}

impl<F: FnMut(&[Step])> Walker<F> {
    fn walk(&mut self, up: usize, down: usize, last: Option<u32>) {
        if up == self.ups && down == self.downs {
            (self.visit)(&self.buf);
            return;
        }
        if down < self.downs && down < up {
            let top = last.unwrap_or(self.k);
            for label in 0..=top {
                if !self.budget.allows(label) {
                    continue;
                }
                self.budget.take(label);
                self.buf.push(Step::Down(label));
                self.walk(up, down + 1, Some(label));
                self.buf.pop();
                self.budget.give(label);
            }
        }
        if up < self.ups {
            self.buf.push(Step::Up);
            self.walk(up + 1, down, None);
            self.buf.pop();
        }
    }
}

fn check_k(k: u32) -> Result<()> {
    if k < 1 {
        return Err(Error::domain("label bound k must be at least 1"));
    }
    Ok(())
}

fn budget_for(filter: &LabelFilter, downs: usize, k: u32) -> Result<Budget> {
    match filter {
        LabelFilter::None => Ok(Budget::Free),
        LabelFilter::Zeros(d) => {
            if *d > downs {
                return Err(Error::domain(format!(
                    "zero count {d} exceeds {downs} down steps"
                )));
            }
            Ok(Budget::Zeros {
                zeros: *d,
                others: downs - d,
            })
        }
        LabelFilter::Composition(a) => {
            if a.len() != k as usize + 1 {
                return Err(Error::domain(format!(
                    "composition needs {} entries (labels 0..={k}), got {}",
                    k + 1,
                    a.len()
                )));
            }
            let total: usize = a.iter().sum();
            if total != downs {
                return Err(Error::domain(format!(
                    "composition sums to {total}, expected {downs}"
                )));
            }
            Ok(Budget::Counts(a.clone()))
        }
    }
}

fn walk_words(
    ups: usize,
    downs: usize,
    k: u32,
    filter: &LabelFilter,
    visit: impl FnMut(&[Step]),
) -> Result<()> {
    check_k(k)?;
    let budget = budget_for(filter, downs, k)?;
    let mut walker = Walker {
        ups,
        downs,
        k,
        budget,
        buf: Vec::with_capacity(ups + downs),
        visit,
    };
    walker.walk(0, 0, None);
    Ok(())
}

/// Calls `visit` on every `k`-labeled Dyck word of semilength `n` matching
/// `filter`, in enumeration order.
pub fn visit_ld(n: usize, k: u32, filter: &LabelFilter, visit: impl FnMut(&[Step])) -> Result<()> {
    walk_words(n, n, k, filter, visit)
}

pub fn enumerate_ld(n: usize, k: u32, filter: &LabelFilter) -> Result<Vec<LabeledDyckWord>> {
    let mut out = Vec::new();
    visit_ld(n, k, filter, |s| {
        out.push(LabeledDyckWord {
            steps: s.to_vec(),
            k,
        })
    })?;
    Ok(out)
}

pub fn count_ld(n: usize, k: u32, filter: &LabelFilter) -> Result<u64> {
    let mut count = 0u64;
    visit_ld(n, k, filter, |_| count += 1)?;
    Ok(count)
}

/// Calls `visit(steps, extra)` on every doubly labeled word; extra channels
/// run in lexicographic order within each base word.
pub fn visit_dld(n: usize, k: u32, mut visit: impl FnMut(&[Step], &[u32])) -> Result<()> {
    let mut extra = Vec::new();
    visit_ld(n, k, &LabelFilter::None, |steps| {
        let eligible = n + zeros_in(steps);
        extra.clear();
        weakly_increasing(eligible, 1, k, &mut extra, &mut |e| visit(steps, e));
    })
}

fn zeros_in(steps: &[Step]) -> usize {
    steps.iter().filter(|&&s| s == Step::Down(0)).count()
}

fn weakly_increasing(len: usize, min: u32, k: u32, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if buf.len() == len {
        f(buf);
        return;
    }
    for v in min..=k {
        buf.push(v);
        weakly_increasing(len, v, k, buf, f);
        buf.pop();
    }
}

pub fn enumerate_dld(n: usize, k: u32) -> Result<Vec<DoublyLabeledDyckWord>> {
    let mut out = Vec::new();
    visit_dld(n, k, |s, e| {
        out.push(DoublyLabeledDyckWord {
            base: LabeledDyckWord {
                steps: s.to_vec(),
                k,
            },
            extra: e.to_vec(),
        })
    })?;
    Ok(out)
}

pub fn count_dld(n: usize, k: u32) -> Result<u64> {
    let mut count = 0u64;
    visit_dld(n, k, |_, _| count += 1)?;
    Ok(count)
}

/// Calls `visit` on every prefix with `n` up steps ending at height `i` whose
/// label counts are exactly `composition` (`a_0..a_k`, summing to `n - i`).
pub fn visit_prefixes(
    n: usize,
    i: usize,
    k: u32,
    composition: &[usize],
    visit: impl FnMut(&[Step]),
) -> Result<()> {
    if i > n {
        return Err(Error::domain(format!("height {i} exceeds n={n}")));
    }
    walk_words(
        n,
        n - i,
        k,
        &LabelFilter::Composition(composition.to_vec()),
        visit,
    )
}

pub fn enumerate_prefixes(
    n: usize,
    i: usize,
    k: u32,
    composition: &[usize],
) -> Result<Vec<DyckPrefixWord>> {
    let mut out = Vec::new();
    visit_prefixes(n, i, k, composition, |s| {
        out.push(DyckPrefixWord {
            steps: s.to_vec(),
            k,
            height: i,
        })
    })?;
    Ok(out)
}

pub fn count_prefixes(n: usize, i: usize, k: u32, composition: &[usize]) -> Result<u64> {
    let mut count = 0u64;
    visit_prefixes(n, i, k, composition, |_| count += 1)?;
    Ok(count)
}

/// A Dyck path `U D^{d_n} U D^{d_{n-1}} ... U D^{d_1}` described by its run
/// lengths `(d_1, ..., d_n)`, with per-run minimums `(a_1, ..., a_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinConstrainedDyck {
    runs: Vec<usize>,
    mins: Vec<usize>,
}

impl MinConstrainedDyck {
    pub fn new(runs: Vec<usize>, mins: Vec<usize>) -> Result<Self> {
        if runs.len() != mins.len() {
            return Err(Error::LengthMismatch(runs.len(), mins.len()));
        }
        let n = runs.len();
        if runs.iter().sum::<usize>() != n {
            return Err(Error::domain("run lengths must sum to n"));
        }
        if let Some(i) = (0..n).find(|&i| runs[i] < mins[i]) {
            return Err(invariant(i + 1, "run shorter than its minimum"));
        }
        // reading order is d_n, d_{n-1}, ..., d_1; after j up steps at most
        // j down steps may have occurred
        let mut downs = 0;
        for (j, &d) in runs.iter().rev().enumerate() {
            downs += d;
            if downs > j + 1 {
                return Err(invariant(n - j, "path goes below the axis"));
            }
        }
        Ok(Self { runs, mins })
    }

    pub fn runs(&self) -> &[usize] {
        &self.runs
    }

    pub fn mins(&self) -> &[usize] {
        &self.mins
    }

    pub fn word(&self) -> String {
        self.runs
            .iter()
            .rev()
            .map(|&d| format!("U{}", "D".repeat(d)))
            .collect()
    }
}

/// `|D_n(a_1, ..., a_n)|` by enumerating run-length vectors.
pub fn enumerate_min_constrained(n: usize, mins: &[usize]) -> Result<u64> {
    if mins.len() != n {
        return Err(Error::LengthMismatch(n, mins.len()));
    }
    if mins.iter().sum::<usize>() > n {
        return Err(Error::domain("minimums exceed n"));
    }
    // choose d_n, d_{n-1}, ..., d_1 in reading order
    fn go(mins: &[usize], j: usize, downs: usize) -> u64 {
        let n = mins.len();
        if j == n {
            return u64::from(downs == n);
        }
        let idx = n - 1 - j;
        let max = j + 1 - downs;
        (mins[idx]..=max).map(|d| go(mins, j + 1, downs + d)).sum()
    }
    Ok(go(mins, 0, 0))
}

/// A labeled lattice path: points visited from `(0, 0)` with unit steps
/// `(1, 1)` and `(1, -1)`, plus the label of each down step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    pub points: Vec<(i64, i64)>,
    pub down_labels: Vec<u32>,
}

pub fn path_of_word(w: &LabeledDyckWord) -> LatticePath {
    let mut points = vec![(0, 0)];
    let mut down_labels = Vec::new();
    let (mut x, mut y) = (0i64, 0i64);
    for s in w.steps() {
        x += 1;
        match s {
            Step::Up => y += 1,
            Step::Down(l) => {
                y -= 1;
                down_labels.push(*l);
            }
        }
        points.push((x, y));
    }
    LatticePath {
        points,
        down_labels,
    }
}

pub fn word_of_path(path: &LatticePath, k: u32) -> Result<LabeledDyckWord> {
    if path.points.first() != Some(&(0, 0)) {
        return Err(invariant(1, "path must start at the origin"));
    }
    let mut labels = path.down_labels.iter();
    let mut steps = Vec::with_capacity(path.points.len().saturating_sub(1));
    for (idx, pair) in path.points.windows(2).enumerate() {
        let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
        if x1 != x0 + 1 {
            return Err(invariant(idx + 1, "steps must advance x by one"));
        }
        match y1 - y0 {
            1 => steps.push(Step::Up),
            -1 => {
                let l = labels
                    .next()
                    .ok_or_else(|| invariant(idx + 1, "down step without a label"))?;
                steps.push(Step::Down(*l));
            }
            _ => return Err(invariant(idx + 1, "steps must change y by one")),
        }
    }
    if labels.next().is_some() {
        return Err(invariant(steps.len(), "more labels than down steps"));
    }
    LabeledDyckWord::new(steps, k)
}
