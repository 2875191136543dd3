use crate::group::FpGroup;
use crate::word::{Syllable, Word};

/// Lazy shortlex enumeration of normalized words of syllable length at
/// most `maxlen`; exponents of infinite factors are bounded by `maxlen`.
pub struct WordEnumerator {
    alphabet: Vec<Syllable>,
    maxlen: usize,
    len: usize,
    // indices into `alphabet`, one per syllable of the current candidate
    idx: Vec<usize>,
    started: bool,
}

impl WordEnumerator {
    fn valid(&self) -> bool {
        self.idx.windows(2).all(|p| self.alphabet[p[0]].0 != self.alphabet[p[1]].0)
    }

    // odometer increment; false when the current length is exhausted
    fn bump(&mut self) -> bool {
        let m = self.alphabet.len();
        for i in (0..self.idx.len()).rev() {
            self.idx[i] += 1;
            if self.idx[i] < m {
                return true;
            }
            self.idx[i] = 0;
        }
        false
    }
}

impl Iterator for WordEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if !self.started {
            self.started = true;
            return Some(Word::identity());
        }
        if self.alphabet.is_empty() {
            return None;
        }
        loop {
            if self.len == 0 || !self.bump() {
                self.len += 1;
                if self.len > self.maxlen {
                    return None;
                }
                self.idx = vec![0; self.len];
            }
            if self.valid() {
                let s = self.idx.iter().map(|&i| self.alphabet[i]).collect();
                return Some(Word::from_normalized(s));
            }
        }
    }
}

impl FpGroup {
    pub fn enumerate_words(&self, maxlen: usize) -> WordEnumerator {
        let mut alphabet = Vec::new();
        for i in 0..self.rank() {
            for e in self.order_of_factor(i).exponents(maxlen as i64) {
                alphabet.push((i, e));
            }
        }
        WordEnumerator { alphabet, maxlen, len: 0, idx: Vec::new(), started: false }
    }
}
