//! The fixed taxonomy of graphlets on two to four vertices.
//!
//! Patterns are numbered 1..=17. Vectors indexed by pattern store entry `i`
//! at array slot `i - 1`.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// Number of patterns in the taxonomy.
pub const NUM_GRAPHLETS: usize = 17;

/// A graphlet pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Graphlet {
    Edge = 1,
    TwoNodeIndependent,
    Triangle,
    TwoStar,
    ThreeNodeOneEdge,
    ThreeNodeIndependent,
    FourClique,
    ChordalCycle,
    TailedTriangle,
    FourCycle,
    ThreeStar,
    FourPath,
    FourNodeOneTriangle,
    FourNodeTwoStar,
    FourNodeTwoEdge,
    FourNodeOneEdge,
    FourNodeIndependent,
}

use Graphlet::*;

impl Graphlet {
    pub const ALL: [Graphlet; NUM_GRAPHLETS] = [
        Edge,
        TwoNodeIndependent,
        Triangle,
        TwoStar,
        ThreeNodeOneEdge,
        ThreeNodeIndependent,
        FourClique,
        ChordalCycle,
        TailedTriangle,
        FourCycle,
        ThreeStar,
        FourPath,
        FourNodeOneTriangle,
        FourNodeTwoStar,
        FourNodeTwoEdge,
        FourNodeOneEdge,
        FourNodeIndependent,
    ];

    /// Connected four-vertex patterns, in table order.
    pub const CONNECTED_4: [Graphlet; 6] = [
        FourClique,
        ChordalCycle,
        TailedTriangle,
        FourCycle,
        ThreeStar,
        FourPath,
    ];

    /// Disconnected four-vertex patterns, in table order.
    pub const DISCONNECTED_4: [Graphlet; 5] = [
        FourNodeOneTriangle,
        FourNodeTwoStar,
        FourNodeTwoEdge,
        FourNodeOneEdge,
        FourNodeIndependent,
    ];

    /// The 1-based pattern id.
    pub fn id(self) -> usize {
        self as usize
    }

    /// Array slot for this pattern.
    pub fn index(self) -> usize {
        self as usize - 1
    }

    pub fn from_id(id: usize) -> Option<Graphlet> {
        (1..=NUM_GRAPHLETS).contains(&id).then(|| Self::ALL[id - 1])
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge => "edge",
            TwoNodeIndependent => "2-node-independent",
            Triangle => "triangle",
            TwoStar => "2-star",
            ThreeNodeOneEdge => "3-node-1-edge",
            ThreeNodeIndependent => "3-node-independent",
            FourClique => "4-clique",
            ChordalCycle => "chordal-cycle",
            TailedTriangle => "tailed-triangle",
            FourCycle => "4-cycle",
            ThreeStar => "3-star",
            FourPath => "4-path",
            FourNodeOneTriangle => "4-node-1-triangle",
            FourNodeTwoStar => "4-node-2-star",
            FourNodeTwoEdge => "4-node-2-edge",
            FourNodeOneEdge => "4-node-1-edge",
            FourNodeIndependent => "4-node-independent",
        }
    }

    /// Number of vertices in the pattern.
    pub fn order(self) -> usize {
        match self.id() {
            1..=2 => 2,
            3..=6 => 3,
            _ => 4,
        }
    }

    /// Number of edges in the pattern.
    pub fn edge_count(self) -> usize {
        match self {
            Edge => 1,
            TwoNodeIndependent => 0,
            Triangle => 3,
            TwoStar => 2,
            ThreeNodeOneEdge => 1,
            ThreeNodeIndependent => 0,
            FourClique => 6,
            ChordalCycle => 5,
            TailedTriangle => 4,
            FourCycle => 4,
            ThreeStar => 3,
            FourPath => 3,
            FourNodeOneTriangle => 3,
            FourNodeTwoStar => 2,
            FourNodeTwoEdge => 2,
            FourNodeOneEdge => 1,
            FourNodeIndependent => 0,
        }
    }

    pub fn is_connected(self) -> bool {
        matches!(
            self,
            Edge | Triangle
                | TwoStar
                | FourClique
                | ChordalCycle
                | TailedTriangle
                | FourCycle
                | ThreeStar
                | FourPath
        )
    }
}

impl fmt::Display for Graphlet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Graphlet {
    type Err = Error;

    /// Accepts a table name (`"4-clique"`), `G7`, or a bare id.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let by_id = t
            .strip_prefix(['G', 'g'])
            .unwrap_or(t)
            .parse::<usize>()
            .ok()
            .and_then(Graphlet::from_id);
        by_id
            .or_else(|| {
                Graphlet::ALL
                    .iter()
                    .copied()
                    .find(|g| g.name().eq_ignore_ascii_case(t))
            })
            .ok_or_else(|| Error::UnknownGraphlet(s.to_string()))
    }
}

impl Serialize for Graphlet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A value per graphlet pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GraphletVec<T>(pub [T; NUM_GRAPHLETS]);

impl<T: Copy + Default> GraphletVec<T> {
    pub fn zeros() -> Self {
        GraphletVec([T::default(); NUM_GRAPHLETS])
    }
}

impl<T> GraphletVec<T> {
    pub fn iter(&self) -> impl Iterator<Item = (Graphlet, &T)> {
        Graphlet::ALL.iter().copied().zip(self.0.iter())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> GraphletVec<U> {
        let mut f = f;
        GraphletVec(std::array::from_fn(|i| f(&self.0[i])))
    }

    pub fn as_array(&self) -> &[T; NUM_GRAPHLETS] {
        &self.0
    }
}

/// Serialized as a map from pattern name to value, in id order.
impl<T: Serialize> Serialize for GraphletVec<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(NUM_GRAPHLETS))?;
        for (g, v) in self.iter() {
            map.serialize_entry(g.name(), v)?;
        }
        map.end()
    }
}

impl<T> Index<Graphlet> for GraphletVec<T> {
    type Output = T;
    fn index(&self, g: Graphlet) -> &T {
        &self.0[g.index()]
    }
}

impl<T> IndexMut<Graphlet> for GraphletVec<T> {
    fn index_mut(&mut self, g: Graphlet) -> &mut T {
        &mut self.0[g.index()]
    }
}

impl<T> From<[T; NUM_GRAPHLETS]> for GraphletVec<T> {
    fn from(a: [T; NUM_GRAPHLETS]) -> Self {
        GraphletVec(a)
    }
}

/// Binomial coefficient `C(n, k)` for `k <= 4`, exact.
pub fn choose(n: u128, k: u32) -> u128 {
    if n < k as u128 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Checked variant of [`choose`] for small `k`.
pub fn checked_choose(n: u128, k: u32) -> Option<u128> {
    if n < k as u128 {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}
