use dlat_ground::GroundStructure;

const NONE: u32 = u32::MAX;
const TABLE_LIMIT: usize = 2048;

/// Joins and meets in the base poset of a ground structure, tabulated for pairs when the
/// structure is small.
pub struct Ops<'a> {
    gs: &'a GroundStructure,
    join2: Option<Vec<u32>>,
    meet2: Option<Vec<u32>>,
}

impl<'a> Ops<'a> {
    pub fn new(gs: &'a GroundStructure) -> Ops<'a> {
        let n = gs.len();
        let (join2, meet2) = if n <= TABLE_LIMIT {
            let p = gs.poset();
            let mut j = vec![NONE; n * n];
            let mut m = vec![NONE; n * n];
            for a in 0..n {
                for b in a..n {
                    let jj = p.join(&[a, b]).map_or(NONE, |x| x as u32);
                    let mm = p.meet(&[a, b]).map_or(NONE, |x| x as u32);
                    j[a * n + b] = jj;
                    j[b * n + a] = jj;
                    m[a * n + b] = mm;
                    m[b * n + a] = mm;
                }
            }
            (Some(j), Some(m))
        } else {
            (None, None)
        };
        Ops { gs, join2, meet2 }
    }

    pub fn structure(&self) -> &'a GroundStructure {
        self.gs
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        match &self.join2 {
            Some(t) => {
                let v = t[a * self.gs.len() + b];
                (v != NONE).then_some(v as usize)
            }
            None => self.gs.poset().join(&[a, b]),
        }
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        match &self.meet2 {
            Some(t) => {
                let v = t[a * self.gs.len() + b];
                (v != NONE).then_some(v as usize)
            }
            None => self.gs.poset().meet(&[a, b]),
        }
    }

    /// Join of a set: folds pairwise joins, falling back to the direct computation when an
    /// intermediate pair has no join (the whole set may still have one).
    pub fn join_set(&self, set: &[usize]) -> Option<usize> {
        let mut acc = self.gs.bottom();
        for &x in set {
            match self.join(acc, x) {
                Some(j) => acc = j,
                None => return self.gs.poset().join(set),
            }
        }
        Some(acc)
    }
}
