//! Classification of every `X_{wP}` up to a length bound.

use rayon::prelude::*;

use crate::report::SurveyRow;
use crate::rootdata::RootDatum;
use crate::schubert::{ClassificationReport, Classifier, Result, SchubertInput};
use crate::weyl::{enumerate_coset_reps, ParabolicSubset};

/// Reports for all `w` in `W^P` with `l(w) <= max_len`, ordered by length
/// then canonical word. Runs on the current rayon pool, one classifier
/// (and rightmost memo) per worker.
pub fn survey_reports(
    d: &RootDatum,
    p: &ParabolicSubset,
    max_len: Option<usize>,
) -> Result<Vec<ClassificationReport>> {
    let elements = enumerate_coset_reps(d, p, max_len.unwrap_or(usize::MAX));
    elements
        .into_par_iter()
        .map_init(
            || Classifier::new(d),
            |c, w| c.classify(&SchubertInput::new(d, p.clone(), w)?),
        )
        .collect()
}

pub fn survey(d: &RootDatum, p: &ParabolicSubset, max_len: Option<usize>) -> Result<Vec<SurveyRow>> {
    Ok(survey_reports(d, p, max_len)?.iter().map(SurveyRow::from).collect())
}
