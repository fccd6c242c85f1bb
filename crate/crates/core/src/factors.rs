//! Per-length factor statistics of a finite word via its suffix automaton.
//!
//! Every state of the automaton is a class of factors sharing one set of
//! end positions, hence one set of right extensions. A state with suffix
//! link `u` holds exactly one factor of each length in `(len(u), len(v)]`,
//! so per-length counts come out of a difference array over the states.

use crate::word::Letter;

#[derive(Clone, Debug)]
struct State {
    len: usize,
    link: Option<usize>,
    next: Vec<(Letter, usize)>,
}

impl State {
    fn go(&self, c: Letter) -> Option<usize> {
        self.next.iter().find(|(l, _)| *l == c).map(|&(_, t)| t)
    }

    fn set(&mut self, c: Letter, to: usize) {
        match self.next.iter_mut().find(|(l, _)| *l == c) {
            Some(slot) => slot.1 = to,
            None => self.next.push((c, to)),
        }
    }
}

/// Suffix automaton of a word over [`Letter`]s.
#[derive(Clone, Debug)]
pub struct SuffixAutomaton {
    states: Vec<State>,
    last: usize,
}

impl SuffixAutomaton {
    pub fn new(word: &[Letter]) -> Self {
        let mut sam = SuffixAutomaton {
            states: Vec::with_capacity(2 * word.len() + 1),
            last: 0,
        };
        sam.states.push(State {
            len: 0,
            link: None,
            next: Vec::new(),
        });
        for &c in word {
            sam.extend(c);
        }
        sam
    }

    fn extend(&mut self, c: Letter) {
        let cur = self.states.len();
        self.states.push(State {
            len: self.states[self.last].len + 1,
            link: None,
            next: Vec::new(),
        });
        let mut p = Some(self.last);
        while let Some(pi) = p {
            if self.states[pi].go(c).is_some() {
                break;
            }
            self.states[pi].set(c, cur);
            p = self.states[pi].link;
        }
        match p {
            None => self.states[cur].link = Some(0),
            Some(pi) => {
                let q = self.states[pi].go(c).expect("transition exists");
                if self.states[pi].len + 1 == self.states[q].len {
                    self.states[cur].link = Some(q);
                } else {
                    let clone = self.states.len();
                    let mut cloned = self.states[q].clone();
                    cloned.len = self.states[pi].len + 1;
                    self.states.push(cloned);
                    let mut p = Some(pi);
                    while let Some(pi) = p {
                        if self.states[pi].go(c) != Some(q) {
                            break;
                        }
                        self.states[pi].set(c, clone);
                        p = self.states[pi].link;
                    }
                    self.states[q].link = Some(clone);
                    self.states[cur].link = Some(clone);
                }
            }
        }
        self.last = cur;
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Whether `factor` occurs in the word.
    pub fn contains(&self, factor: &[Letter]) -> bool {
        let mut v = 0;
        for &c in factor {
            match self.states[v].go(c) {
                Some(t) => v = t,
                None => return false,
            }
        }
        true
    }

    pub fn stats(&self, n_max: usize) -> FactorStats {
        let mut p = vec![0i64; n_max + 2];
        let mut s = vec![0i64; n_max + 2];
        let mut excess = vec![0i64; n_max + 2];
        let mut dead = vec![0i64; n_max + 2];
        let mut max_branching = 0;
        for v in self.states.iter().skip(1) {
            let lo = self.states[v.link.expect("non-root state has a link")].len + 1;
            let hi = v.len.min(n_max);
            if lo > hi {
                continue;
            }
            let out = v.next.len();
            max_branching = max_branching.max(out);
            let bump = |arr: &mut Vec<i64>, by: i64| {
                arr[lo] += by;
                arr[hi + 1] -= by;
            };
            bump(&mut p, 1);
            if out >= 2 {
                bump(&mut s, 1);
                bump(&mut excess, out as i64 - 1);
            }
            if out == 0 {
                bump(&mut dead, 1);
            }
        }
        let prefix_sum = |arr: Vec<i64>| -> Vec<usize> {
            arr.iter()
                .skip(1)
                .take(n_max)
                .scan(0i64, |acc, &d| {
                    *acc += d;
                    Some(*acc as usize)
                })
                .collect()
        };
        FactorStats {
            p: prefix_sum(p),
            s: prefix_sum(s),
            excess: prefix_sum(excess),
            dead_ends: prefix_sum(dead),
            max_branching,
        }
    }
}

/// Factor counts indexed by length: entry `i` describes length `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorStats {
    /// Distinct factors.
    pub p: Vec<usize>,
    /// Factors with at least two distinct right extensions.
    pub s: Vec<usize>,
    /// Sum over factors of `(extensions - 1)` where positive.
    pub excess: Vec<usize>,
    /// Factors with no right extension (a suffix occurring only at the end).
    pub dead_ends: Vec<usize>,
    /// Largest number of right extensions among factors of length `<= n_max`.
    pub max_branching: usize,
}

impl FactorStats {
    pub fn of(word: &[Letter], n_max: usize) -> Self {
        SuffixAutomaton::new(word).stats(n_max)
    }
}
