//! Supernice normalization of tree decompositions and node-kind
//! classification. A supernice decomposition is rooted, binary, has an empty
//! root bag and empty leaf bags, changes bags by at most one vertex per edge,
//! and marks the topmost occurrence of each vertex as a dedicated top node.
//! The ell-supernice form additionally guarantees a run of ell+1 neutral
//! nodes above every introduce, forget, and join node, which is exactly the
//! headroom the inner-decomposition construction and the dynamic program
//! need.

use crate::bits::{Vertex, VertexSet};
use crate::graph::Graph;
use crate::treedec::{validate, TreeDecomposition};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Leaf with an empty bag.
    Initial,
    /// One child; the bag adds this vertex over the child's bag.
    Introduce(Vertex),
    /// One child; the bag drops this vertex from the child's bag.
    Forget(Vertex),
    /// Two children with bags identical to this node's bag.
    Join,
    /// One child with an identical bag, parent does not forget anything here.
    Neutral,
    /// One child with an identical bag, and the parent forgets this vertex:
    /// the topmost occurrence of the vertex.
    Top(Vertex),
}

/// A rooted binary ell-supernice tree decomposition with per-node kinds and
/// the caches the rest of the pipeline keeps asking for.
#[derive(Debug, Clone)]
pub struct Supernice {
    bags: Vec<VertexSet>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    kind: Vec<NodeKind>,
    root: usize,
    ell: usize,
    subtree: Vec<VertexSet>,
    post: Vec<usize>,
    top_of: Vec<Option<usize>>,
}

impl Supernice {
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }
    pub fn bag(&self, t: usize) -> VertexSet {
        self.bags[t]
    }
    pub fn kind(&self, t: usize) -> NodeKind {
        self.kind[t]
    }
    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }
    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }
    pub fn root(&self) -> usize {
        self.root
    }
    pub fn ell(&self) -> usize {
        self.ell
    }
    /// Union of bags in the subtree rooted at t.
    pub fn subtree(&self, t: usize) -> VertexSet {
        self.subtree[t]
    }
    /// Children-before-parents order.
    pub fn post_order(&self) -> &[usize] {
        &self.post
    }
    /// The node closest to the root whose bag holds v.
    pub fn top_of(&self, v: Vertex) -> Option<usize> {
        self.top_of[v]
    }
    /// topv(t): the vertex whose top node is t, if any.
    pub fn top_vertex(&self, t: usize) -> Option<Vertex> {
        match self.kind[t] {
            NodeKind::Top(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_treedec(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (t, cs) in self.children.iter().enumerate() {
            for &c in cs {
                edges.push((t, c));
            }
        }
        TreeDecomposition::new(self.bags.clone(), edges).expect("supernice tree is a tree")
    }

    /// Structural re-check of all supernice and ell-supernice conditions.
    /// Returns human-readable issues; empty means the structure is sound.
    pub fn verify(&self, g: &Graph) -> Vec<String> {
        let mut issues = Vec::new();
        let report = validate(g, &self.to_treedec());
        if !report.is_valid() {
            issues.push(format!("not a valid tree decomposition: {report}"));
        }
        if !self.bags[self.root].is_empty() {
            issues.push("root bag is not empty".into());
        }
        match classify_nodes(&self.bags, &self.parent, &self.children) {
            Err(e) => issues.push(format!("classification failed: {e}")),
            Ok(kinds) => {
                if kinds != self.kind {
                    issues.push("stored kinds disagree with classification".into());
                }
            }
        }
        // every vertex tops out at a Top node with the right label
        for v in g.vertex_set().iter() {
            match self.top_of[v] {
                None => issues.push(format!("vertex {v} has no top node")),
                Some(t) => {
                    if self.kind[t] != NodeKind::Top(v) {
                        issues.push(format!(
                            "top node {t} of vertex {v} has kind {:?}",
                            self.kind[t]
                        ));
                    }
                }
            }
        }
        // ell+1 neutral nodes starting at the parent of each structural node
        for t in 0..self.node_count() {
            if matches!(
                self.kind[t],
                NodeKind::Introduce(_) | NodeKind::Forget(_) | NodeKind::Join
            ) {
                let mut cur = self.parent[t];
                for step in 0..=self.ell {
                    match cur {
                        Some(p) if self.kind[p] == NodeKind::Neutral => cur = self.parent[p],
                        _ => {
                            issues.push(format!(
                                "node {t} ({:?}) has only {step} neutral ancestors, needs {}",
                                self.kind[t],
                                self.ell + 1
                            ));
                            break;
                        }
                    }
                }
            }
        }
        issues
    }
}

/// Classifies every node of a rooted binary decomposition or reports the
/// first node that fits no kind. A node with one identical-bag child is a
/// top node exactly when its parent forgets a vertex of its bag.
pub fn classify_nodes(
    bags: &[VertexSet],
    parent: &[Option<usize>],
    children: &[Vec<usize>],
) -> Result<Vec<NodeKind>> {
    let n = bags.len();
    let mut kinds = Vec::with_capacity(n);
    for t in 0..n {
        let b = bags[t];
        let kind = match children[t].as_slice() {
            [] => {
                if b.is_empty() {
                    NodeKind::Initial
                } else {
                    return Err(Error::NotSupernice {
                        node: t,
                        reason: "leaf with a non-empty bag".into(),
                    });
                }
            }
            [c] => {
                let cb = bags[*c];
                if b == cb {
                    // Neutral or Top, depending on what the parent does
                    match parent[t] {
                        Some(p) if bags[p].is_subset_of(b) && (b - bags[p]).len() == 1 => {
                            NodeKind::Top((b - bags[p]).min_elem().unwrap())
                        }
                        _ => NodeKind::Neutral,
                    }
                } else if cb.is_subset_of(b) && (b - cb).len() == 1 {
                    NodeKind::Introduce((b - cb).min_elem().unwrap())
                } else if b.is_subset_of(cb) && (cb - b).len() == 1 {
                    NodeKind::Forget((cb - b).min_elem().unwrap())
                } else {
                    return Err(Error::NotSupernice {
                        node: t,
                        reason: format!(
                            "bag {b:?} vs child bag {cb:?} differ by more than one vertex"
                        ),
                    });
                }
            }
            [c1, c2] => {
                if bags[*c1] == b && bags[*c2] == b {
                    NodeKind::Join
                } else {
                    return Err(Error::NotSupernice {
                        node: t,
                        reason: "join children bags differ from the node bag".into(),
                    });
                }
            }
            _ => {
                return Err(Error::NotSupernice {
                    node: t,
                    reason: format!("{} children", children[t].len()),
                })
            }
        };
        kinds.push(kind);
    }
    Ok(kinds)
}

/// Working tree during the normalization phases.
struct Builder {
    bags: Vec<VertexSet>,
    adj: Vec<Vec<usize>>,
}

impl Builder {
    fn from_td(td: &TreeDecomposition) -> Self {
        let bags = td.bags().to_vec();
        let adj = (0..td.node_count()).map(|t| td.neighbors(t).to_vec()).collect();
        Builder { bags, adj }
    }

    fn push(&mut self, bag: VertexSet) -> usize {
        self.bags.push(bag);
        self.adj.push(Vec::new());
        self.bags.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|&x| x != b);
        self.adj[b].retain(|&x| x != a);
    }

    fn degree(&self, t: usize) -> usize {
        self.adj[t].len()
    }

    fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::new();
        for (a, ns) in self.adj.iter().enumerate() {
            for &b in ns {
                if a < b {
                    es.push((a, b));
                }
            }
        }
        es.sort_unstable();
        es
    }

    /// Replace high-degree nodes by chains of identical-bag copies so every
    /// node has degree at most 3.
    fn binarize(&mut self) {
        let original = self.bags.len();
        for t in 0..original {
            let d = self.degree(t);
            if d <= 3 {
                continue;
            }
            let mut ns = self.adj[t].clone();
            ns.sort_unstable();
            for &x in &ns {
                self.unlink(t, x);
            }
            // chain t = c_1, ..., c_{d-2}
            let mut chain = vec![t];
            for _ in 1..d - 2 {
                chain.push(self.push(self.bags[t]));
            }
            for w in chain.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>() {
                self.link(w.0, w.1);
            }
            self.link(chain[0], ns[0]);
            self.link(chain[0], ns[1]);
            for i in 2..d - 2 {
                self.link(chain[i - 1], ns[i]);
            }
            let last = *chain.last().unwrap();
            self.link(last, ns[d - 2]);
            self.link(last, ns[d - 1]);
        }
    }

    /// Subdivide every edge incident to a degree-3 node with a copy of that
    /// node's bag, so branch nodes only see their own bag and no two branch
    /// nodes stay adjacent.
    fn equalize(&mut self) {
        let edges = self.edge_list();
        let deg: Vec<usize> = (0..self.bags.len()).map(|t| self.degree(t)).collect();
        for (a, b) in edges {
            let sub_a = deg[a] >= 3;
            let sub_b = deg[b] >= 3;
            if !sub_a && !sub_b {
                continue;
            }
            self.unlink(a, b);
            let mut prev = a;
            if sub_a {
                let x = self.push(self.bags[a]);
                self.link(prev, x);
                prev = x;
            }
            if sub_b {
                let y = self.push(self.bags[b]);
                self.link(prev, y);
                prev = y;
            }
            self.link(prev, b);
        }
    }

    /// Attach empty-bag nodes until every leaf has an empty bag.
    fn add_empty_leaves(&mut self) {
        loop {
            let candidates: Vec<usize> = (0..self.bags.len())
                .filter(|&t| self.degree(t) <= 1 && !self.bags[t].is_empty())
                .collect();
            if candidates.is_empty() {
                return;
            }
            for t in candidates {
                let leaf = self.push(VertexSet::EMPTY);
                self.link(t, leaf);
            }
        }
    }

    /// Insert single-vertex-edit chains so adjacent bags differ by at most
    /// one vertex. Removals happen before additions, both in ascending
    /// vertex order.
    fn smooth(&mut self) {
        let edges = self.edge_list();
        for (a, b) in edges {
            let ba = self.bags[a];
            let bb = self.bags[b];
            if (ba - bb).len() + (bb - ba).len() <= 1 {
                continue;
            }
            self.unlink(a, b);
            let mut cur = ba;
            let mut prev = a;
            let mut steps: Vec<VertexSet> = Vec::new();
            for v in (ba - bb).iter() {
                cur.remove(v);
                steps.push(cur);
            }
            for v in (bb - ba).iter() {
                cur.insert(v);
                steps.push(cur);
            }
            debug_assert_eq!(cur, bb);
            steps.pop(); // last step equals bag(b)
            for s in steps {
                let x = self.push(s);
                self.link(prev, x);
                prev = x;
            }
            self.link(prev, b);
        }
    }

    /// Replace every degree-2 node by a path of ell+3 identical-bag copies.
    fn multiply(&mut self, ell: usize) {
        let original = self.bags.len();
        for t in 0..original {
            if self.degree(t) != 2 {
                continue;
            }
            let (x, y) = (self.adj[t][0], self.adj[t][1]);
            self.unlink(t, x);
            self.unlink(t, y);
            let mut chain = vec![t];
            for _ in 1..ell + 3 {
                chain.push(self.push(self.bags[t]));
            }
            self.link(x, chain[0]);
            for w in chain.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>() {
                self.link(w.0, w.1);
            }
            self.link(*chain.last().unwrap(), y);
        }
    }

    /// Grow a chain of ell+2 empty nodes off the chosen empty leaf and return
    /// the far end as the root.
    fn attach_root_chain(&mut self, ell: usize) -> usize {
        let leaf = (0..self.bags.len())
            .find(|&t| self.degree(t) <= 1 && self.bags[t].is_empty())
            .expect("an empty-bag leaf exists after the leaf phase");
        let mut prev = leaf;
        for _ in 0..ell + 2 {
            let x = self.push(VertexSet::EMPTY);
            self.link(prev, x);
            prev = x;
        }
        prev
    }
}

/// Turns any valid tree decomposition into an ell-supernice one. Every new
/// bag is a subset of some input bag and every input bag survives verbatim.
pub fn make_supernice(g: &Graph, td: &TreeDecomposition, ell: usize) -> Result<Supernice> {
    let report = validate(g, td);
    if !report.is_valid() {
        return Err(Error::Invalid(format!("input decomposition invalid: {report}")));
    }
    let mut b = Builder::from_td(td);
    b.binarize();
    b.equalize();
    b.add_empty_leaves();
    b.smooth();
    b.multiply(ell);
    let root = b.attach_root_chain(ell);

    // orient from the root
    let n = b.bags.len();
    let mut parent = vec![None; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(t) = stack.pop() {
        order.push(t);
        let mut ns = b.adj[t].clone();
        ns.sort_unstable();
        for s in ns {
            if !seen[s] {
                seen[s] = true;
                parent[s] = Some(t);
                children[t].push(s);
                stack.push(s);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Contract("normalization produced a disconnected tree".into()));
    }

    let kind = classify_nodes(&b.bags, &parent, &children)?;

    // post order (children before parents) and subtree vertex sets
    let mut post = order.clone();
    post.reverse();
    let mut subtree = b.bags.clone();
    for &t in &post {
        for &c in &children[t] {
            subtree[t] = subtree[t] | subtree[c];
        }
    }
    // top nodes: scanning root-down, the first node holding v
    let mut top_of = vec![None; g.n()];
    for &t in &order {
        for v in b.bags[t].iter() {
            let covered_above = match parent[t] {
                Some(p) => b.bags[p].contains(v),
                None => false,
            };
            if !covered_above && top_of[v].is_none() {
                top_of[v] = Some(t);
            }
        }
    }

    let sn = Supernice {
        bags: b.bags,
        parent,
        children,
        kind,
        root,
        ell,
        subtree,
        post,
        top_of,
    };
    let issues = sn.verify(g);
    if !issues.is_empty() {
        return Err(Error::Contract(format!(
            "normalization output fails its own checks: {}",
            issues.join("; ")
        )));
    }
    Ok(sn)
}
