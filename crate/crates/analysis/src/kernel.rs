use bisetkit_algebra::{FpGroup, Word};
use bisetkit_bisets::WreathBiset;

use crate::budget::Budget;
use crate::error::AnalysisError;
use crate::level::level_action;

/// The words of syllable length at most `maxlen`, within the budget.
pub fn ball(g: &FpGroup, maxlen: usize, budget: &Budget) -> Result<Vec<Word>, AnalysisError> {
    let mut out = Vec::new();
    for w in g.enumerate_words(maxlen) {
        out.push(w);
        budget.check("words", budget.words, out.len() as u64)?;
    }
    Ok(out)
}

/// Words of syllable length at most `maxlen` acting trivially on level
/// `n`. This contains the true kernel within the ball and shrinks as `n`
/// grows.
pub fn approx_kernel(b: &WreathBiset, n: usize, maxlen: usize, budget: &Budget) -> Result<Vec<Word>, AnalysisError> {
    let act = level_action(b, n, budget)?;
    let words = ball(&b.right, maxlen, budget)?;
    Ok(words
        .into_iter()
        .filter(|w| act.word_perm(w).iter().enumerate().all(|(x, &y)| x == y))
        .collect())
}
