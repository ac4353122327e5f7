use std::fmt;

use crate::election::ScoringVector;
use crate::obs::Variant;

/// Complexity of online bribery for a scoring vector and variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DichotomyVerdict {
    /// Every candidate always wins.
    TrivialAllWin,
    P,
    NpHard,
    NpComplete,
    /// Complete for polynomial time with one NP query.
    PNp1Complete,
    /// Hard for polynomial time with one NP query, and in `Delta_2^p`.
    PNp1HardInDelta2,
}

impl fmt::Display for DichotomyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DichotomyVerdict::TrivialAllWin => "trivial-all-win",
            DichotomyVerdict::P => "P",
            DichotomyVerdict::NpHard => "NP-hard",
            DichotomyVerdict::NpComplete => "NP-complete",
            DichotomyVerdict::PNp1Complete => "PNP1-complete",
            DichotomyVerdict::PNp1HardInDelta2 => "PNP1-hard-in-Delta2",
        })
    }
}

/// Classifies by mode, prices and weights; a bribe cap does not change the
/// class.
pub fn scoring_dichotomy(alpha: &ScoringVector, variant: &Variant) -> DichotomyVerdict {
    let a = alpha.values();
    let (Some(first), Some(last)) = (a.first(), a.last()) else {
        return DichotomyVerdict::TrivialAllWin;
    };
    if first == last {
        return DichotomyVerdict::TrivialAllWin;
    }
    if !variant.weighted {
        return DichotomyVerdict::P;
    }
    let plurality_like = a[1] == *last;
    let veto3 = a.len() == 3 && a[0] == a[1];
    match (variant.priced, plurality_like, veto3) {
        (false, true, _) => DichotomyVerdict::P,
        (false, false, true) => DichotomyVerdict::PNp1Complete,
        (true, true, _) => DichotomyVerdict::NpComplete,
        (true, false, true) => DichotomyVerdict::PNp1HardInDelta2,
        (_, false, false) => DichotomyVerdict::NpHard,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obs::Mode;

    fn alpha(v: &[u64]) -> ScoringVector {
        ScoringVector::from_u64s(v).unwrap()
    }

    #[test]
    fn table() {
        for v in Variant::all() {
            assert_eq!(scoring_dichotomy(&alpha(&[3, 3, 3]), &v), DichotomyVerdict::TrivialAllWin);
        }
        let pw = Variant::new(Mode::Constructive, true, true);
        let w = Variant::new(Mode::Destructive, false, true);
        let p = Variant::new(Mode::Constructive, true, false);
        assert_eq!(scoring_dichotomy(&alpha(&[1, 0, 0]), &pw), DichotomyVerdict::NpComplete);
        assert_eq!(scoring_dichotomy(&alpha(&[1, 0]), &pw), DichotomyVerdict::NpComplete);
        assert_eq!(scoring_dichotomy(&alpha(&[1, 1, 0]), &w), DichotomyVerdict::PNp1Complete);
        assert_eq!(scoring_dichotomy(&alpha(&[1, 1, 0]), &pw), DichotomyVerdict::PNp1HardInDelta2);
        assert_eq!(scoring_dichotomy(&alpha(&[2, 1, 0]), &w), DichotomyVerdict::NpHard);
        assert_eq!(scoring_dichotomy(&alpha(&[2, 1, 0]), &p), DichotomyVerdict::P);
        assert_eq!(scoring_dichotomy(&alpha(&[1, 1, 1, 0]), &w), DichotomyVerdict::NpHard);
        assert_eq!(scoring_dichotomy(&alpha(&[]), &w), DichotomyVerdict::TrivialAllWin);
    }
}
