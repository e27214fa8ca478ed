use crate::circuit::VertexId;

/// Fractional bootstrapping weight `x_v` for every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalWeights(Vec<f64>);

impl FractionalWeights {
    pub fn zeros(n: usize) -> Self {
        FractionalWeights(vec![0.0; n])
    }

    pub fn from_vec(x: Vec<f64>) -> Self {
        FractionalWeights(x)
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> f64 {
        self.0[v.index()]
    }

    pub fn set(&mut self, v: VertexId, value: f64) {
        self.0[v.index()] = value;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Sum of weights over the given vertices.
    pub fn total(&self, vertices: &[VertexId]) -> f64 {
        vertices.iter().map(|&v| self.get(v)).sum()
    }
}
