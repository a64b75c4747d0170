//! Fixed-order pairwise summation.
//!
//! Every reduction in the crate goes through [`pairwise_sum`] over a vector whose
//! order is determined by the traversal, never by the thread schedule, so results
//! are bit-identical for any worker count.

use std::ops::Add;

use num_traits::Zero;

const LEAF: usize = 8;

pub fn pairwise_sum<V>(values: &[V]) -> V
where
    V: Copy + Zero + Add<Output = V>,
{
    if values.len() <= LEAF {
        return values.iter().fold(V::zero(), |acc, &v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_small() {
        assert_eq!(pairwise_sum::<f64>(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
    }

    #[test]
    fn beats_naive_on_many_small_terms() {
        let v = vec![0.1f32; 1_000_000];
        let naive: f32 = v.iter().sum();
        let pw = pairwise_sum(&v);
        assert!((pw - 100_000.0).abs() < (naive - 100_000.0).abs());
        assert!((pw - 100_000.0).abs() < 1.0);
    }
}
