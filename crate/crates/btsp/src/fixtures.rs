//! Built-in 12-city instances used throughout the tests and the CLI.
//!
//! Instances A and B are planar point sets whose distance matrices are
//! a Van der Veen matrix and a relaxed Van der Veen matrix
//! respectively; their canonical matrices use Euclidean distances
//! rounded to the nearest integer, which is the variant that reproduces
//! the published violation count (17 of 165) for instance B. The fig4
//! instance uses rectilinear distances.

use crate::matrix::{DistanceMatrix, Metric, PointSet};

const INSTANCE_A_X: [f64; 12] = [5.0, 34.0, 17.0, 37.0, 37.0, 31.0, 42.0, 40.0, 45.0, 43.0, 50.0, 49.0];
const INSTANCE_A_Y: [f64; 12] = [45.0, 35.0, 35.0, 31.0, 19.0, 17.0, 13.0, 9.0, 9.0, 4.0, 3.0, 8.0];
const INSTANCE_B_X: [f64; 12] = [5.0, 35.0, 17.0, 37.0, 26.0, 33.0, 24.0, 25.0, 30.0, 31.0, 37.0, 44.0];
const INSTANCE_B_Y: [f64; 12] = [45.0, 35.0, 35.0, 31.0, 26.0, 19.0, 21.0, 11.0, 2.0, 12.0, 6.0, 8.0];
const FIG4_X: [f64; 12] = [38.0, 48.0, 35.0, 35.0, 32.0, 1.0, 16.0, 12.0, 9.0, 2.0, 2.0, 5.0];
const FIG4_Y: [f64; 12] = [8.0, 15.0, 17.0, 44.0, 18.0, 16.0, 26.0, 46.0, 34.0, 38.0, 44.0, 47.0];

/// A named builtin instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    InstanceA,
    InstanceB,
    Fig4,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::InstanceA, Fixture::InstanceB, Fixture::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::InstanceA => "instance-a",
            Fixture::InstanceB => "instance-b",
            Fixture::Fig4 => "fig4",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn points(self) -> PointSet {
        let (xs, ys) = match self {
            Fixture::InstanceA => (&INSTANCE_A_X, &INSTANCE_A_Y),
            Fixture::InstanceB => (&INSTANCE_B_X, &INSTANCE_B_Y),
            Fixture::Fig4 => (&FIG4_X, &FIG4_Y),
        };
        PointSet::new(xs.iter().copied().zip(ys.iter().copied()).collect())
            .expect("fixture coordinates are finite")
    }

    /// The metric under which the instance's published properties hold.
    pub fn metric(self) -> Metric {
        match self {
            Fixture::InstanceA | Fixture::InstanceB => Metric::EuclideanRounded,
            Fixture::Fig4 => Metric::Rectilinear,
        }
    }

    /// Canonical distance matrix of the instance.
    pub fn matrix(self) -> DistanceMatrix {
        DistanceMatrix::from_points(&self.points(), self.metric())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Entry;

    #[test]
    fn names_round_trip() {
        for f in Fixture::ALL {
            assert_eq!(Fixture::from_name(f.name()), Some(f));
        }
        assert_eq!(Fixture::from_name("nope"), None);
    }

    #[test]
    fn all_fixtures_have_12_cities() {
        for f in Fixture::ALL {
            assert_eq!(f.points().len(), 12);
            assert_eq!(f.matrix().n(), 12);
        }
    }

    #[test]
    fn fig4_known_entries() {
        let c = Fixture::Fig4.matrix();
        assert_eq!(c.get(1, 2), Entry::Finite(17.0));
        assert_eq!(c.get(11, 12), Entry::Finite(6.0));
    }
}
