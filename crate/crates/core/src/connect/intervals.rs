/// Sorted union of disjoint closed intervals on the real line. Intervals
/// closer than the merge tolerance are fused; single points are allowed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IntervalSet {
    ivs: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ivs.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ivs.iter().copied()
    }

    /// Inserts `[lo, hi]`; returns whether the set grew by more than `tol`.
    pub fn insert(&mut self, lo: f64, hi: f64, tol: f64) -> bool {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        if self.covers(lo, hi, tol) {
            return false;
        }
        let mut nlo = lo;
        let mut nhi = hi;
        let mut out = Vec::with_capacity(self.ivs.len() + 1);
        let mut placed = false;
        for &(a, b) in &self.ivs {
            if b < nlo - tol {
                out.push((a, b));
            } else if a > nhi + tol {
                if !placed {
                    out.push((nlo, nhi));
                    placed = true;
                }
                out.push((a, b));
            } else {
                nlo = nlo.min(a);
                nhi = nhi.max(b);
            }
        }
        if !placed {
            out.push((nlo, nhi));
        }
        self.ivs = out;
        true
    }

    pub fn contains(&self, t: f64, tol: f64) -> bool {
        self.ivs.iter().any(|&(a, b)| t >= a - tol && t <= b + tol)
    }

    /// Whether `[lo, hi]` lies in a single interval of the set, up to `tol`.
    pub fn covers(&self, lo: f64, hi: f64, tol: f64) -> bool {
        self.ivs.iter().any(|&(a, b)| lo >= a - tol && hi <= b + tol)
    }

    /// Total length of the intervals.
    pub fn measure(&self) -> f64 {
        self.ivs.iter().map(|(a, b)| b - a).sum()
    }

    /// Intersection with `[lo, hi]`.
    pub fn clipped(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        self.ivs
            .iter()
            .filter(|&&(a, b)| b >= lo && a <= hi)
            .map(|&(a, b)| (a.max(lo), b.min(hi)))
            .collect()
    }
}
