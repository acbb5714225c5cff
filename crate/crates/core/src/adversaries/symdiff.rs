use alloc::vec::Vec;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypothesis::{mistakes, MultiHypothesis};
use crate::label::{Label, Point};
use crate::pattern::{Example, Pattern};

/// `T` copies of `x` whose labels are i.i.d. uniform over `hA(x) ∪ hB(x)`.
pub fn symmetric_difference_sequence<R: Rng + ?Sized>(
    ha: &MultiHypothesis,
    hb: &MultiHypothesis,
    x: Point,
    horizon: usize,
    rng: &mut R,
) -> Result<Pattern> {
    if x.index() >= ha.domain_size() || x.index() >= hb.domain_size() {
        return Err(Error::PointOutOfRange { point: x.index(), size: ha.domain_size().min(hb.domain_size()) });
    }
    let (a, b) = (ha.image(x), hb.image(x));
    if a == b {
        return Err(Error::InvalidParameter("hypotheses agree on the chosen point".into()));
    }
    let mut union: Vec<Label> = a.iter().chain(b.iter()).collect();
    union.sort_unstable();
    union.dedup();
    Ok((0..horizon).map(|_| Example { x, y: union[rng.gen_range(0..union.len())] }).collect())
}

/// Mistakes of the better of the two hypotheses.
pub fn two_hypothesis_opt(ha: &MultiHypothesis, hb: &MultiHypothesis, s: &Pattern) -> usize {
    mistakes(ha, s).min(mistakes(hb, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn labels_stay_in_union() {
        let ha = MultiHypothesis::from_lists(&[vec![0, 1]], 4).unwrap();
        let hb = MultiHypothesis::from_lists(&[vec![1, 2]], 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = symmetric_difference_sequence(&ha, &hb, Point(0), 300, &mut rng).unwrap();
        assert!(s.iter().all(|z| z.y.index() <= 2));
        let twos = s.iter().filter(|z| z.y == Label(2)).count();
        let zeros = s.iter().filter(|z| z.y == Label(0)).count();
        assert_eq!(two_hypothesis_opt(&ha, &hb, &s), twos.min(zeros));
    }

    #[test]
    fn equal_images_rejected() {
        let h = MultiHypothesis::from_lists(&[vec![0, 1]], 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(symmetric_difference_sequence(&h, &h, Point(0), 3, &mut rng).is_err());
    }
}
