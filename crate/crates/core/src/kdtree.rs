//! Small 3D k-d tree for nearest-neighbor queries over point clouds and
//! voxel centers.
//!
//! Queries are deterministic: exact distance ties resolve to the candidate
//! with the lowest payload index, which the semantic label transfer relies
//! on. Voxel-center queries feed integer-valued coordinates through f64, so
//! tied distances compare exactly equal.

#[derive(Debug, Clone, Copy)]
struct Entry {
    p: [f64; 3],
    /// Caller-side payload index, also the tie-break key.
    idx: usize,
}

#[derive(Debug)]
struct Node {
    entry: Entry,
    axis: usize,
    left: Option<Box<Node>>,
    right: Option<Box<Node>>,
}

/// Static k-d tree over `[f64; 3]` points.
#[derive(Debug)]
pub struct KdTree {
    root: Option<Box<Node>>,
    len: usize,
}

impl KdTree {
    /// Build from points; the payload index of each point is its position in
    /// the input slice.
    pub fn build(points: &[[f64; 3]]) -> Self {
        let mut entries: Vec<Entry> =
            points.iter().enumerate().map(|(idx, &p)| Entry { p, idx }).collect();
        let len = entries.len();
        let root = Self::build_node(&mut entries, 0);
        KdTree { root, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn build_node(entries: &mut [Entry], depth: usize) -> Option<Box<Node>> {
        if entries.is_empty() {
            return None;
        }
        // Split along the widest axis of this subset's bounding box.
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for e in entries.iter() {
            for a in 0..3 {
                lo[a] = lo[a].min(e.p[a]);
                hi[a] = hi[a].max(e.p[a]);
            }
        }
        let mut axis = 0;
        for a in 1..3 {
            if hi[a] - lo[a] > hi[axis] - lo[axis] {
                axis = a;
            }
        }
        let mid = entries.len() / 2;
        entries.select_nth_unstable_by(mid, |a, b| {
            a.p[axis].total_cmp(&b.p[axis]).then(a.idx.cmp(&b.idx))
        });
        let entry = entries[mid];
        let (left_slice, rest) = entries.split_at_mut(mid);
        let right_slice = &mut rest[1..];
        Some(Box::new(Node {
            entry,
            axis,
            left: Self::build_node(left_slice, depth + 1),
            right: Self::build_node(right_slice, depth + 1),
        }))
    }

    /// Nearest neighbor of `q`: returns `(payload index, squared distance)`.
    /// Ties on squared distance go to the lowest payload index.
    pub fn nearest(&self, q: [f64; 3]) -> Option<(usize, f64)> {
        let root = self.root.as_deref()?;
        let mut best: Option<(usize, f64)> = None;
        Self::nearest_rec(root, q, &mut best);
        best
    }

    fn nearest_rec(node: &Node, q: [f64; 3], best: &mut Option<(usize, f64)>) {
        let d2 = dist2(node.entry.p, q);
        let better = match *best {
            None => true,
            Some((bidx, bd2)) => d2 < bd2 || (d2 == bd2 && node.entry.idx < bidx),
        };
        if better {
            *best = Some((node.entry.idx, d2));
        }
        let delta = q[node.axis] - node.entry.p[node.axis];
        let (near, far) =
            if delta < 0.0 { (&node.left, &node.right) } else { (&node.right, &node.left) };
        if let Some(n) = near {
            Self::nearest_rec(n, q, best);
        }
        // The far side may hold an equally distant candidate with a smaller
        // index, so recurse on == as well.
        if let Some(f) = far {
            let bound = delta * delta;
            if best.map_or(true, |(_, bd2)| bound <= bd2) {
                Self::nearest_rec(f, q, best);
            }
        }
    }

    /// Indices of the k nearest neighbors of `q`, closest first.
    pub fn knn(&self, q: [f64; 3], k: usize) -> Vec<(usize, f64)> {
        let mut heap: Vec<(f64, usize)> = Vec::with_capacity(k + 1);
        if let Some(root) = self.root.as_deref() {
            Self::knn_rec(root, q, k, &mut heap);
        }
        heap.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        heap.into_iter().map(|(d2, idx)| (idx, d2)).collect()
    }

    fn knn_rec(node: &Node, q: [f64; 3], k: usize, heap: &mut Vec<(f64, usize)>) {
        let d2 = dist2(node.entry.p, q);
        if heap.len() < k {
            heap.push((d2, node.entry.idx));
            heap.sort_by(|a, b| b.0.total_cmp(&a.0));
        } else if d2 < heap[0].0 {
            heap[0] = (d2, node.entry.idx);
            heap.sort_by(|a, b| b.0.total_cmp(&a.0));
        }
        let delta = q[node.axis] - node.entry.p[node.axis];
        let (near, far) =
            if delta < 0.0 { (&node.left, &node.right) } else { (&node.right, &node.left) };
        if let Some(n) = near {
            Self::knn_rec(n, q, k, heap);
        }
        if let Some(f) = far {
            if heap.len() < k || delta * delta <= heap[0].0 {
                Self::knn_rec(f, q, k, heap);
            }
        }
    }
}

fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    dx * dx + dy * dy + dz * dz
}
