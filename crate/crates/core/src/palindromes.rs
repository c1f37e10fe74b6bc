//! Distinct palindromic factors of every prefix, via a palindromic tree.

use crate::word::Letter;

struct Node {
    len: isize,
    link: usize,
    edges: Vec<(Letter, usize)>,
}

impl Node {
    fn child(&self, x: Letter) -> Option<usize> {
        self.edges.iter().find(|&&(y, _)| y == x).map(|&(_, v)| v)
    }
}

/// `counts[m]` is the number of distinct palindromes, ε included, among the
/// factors of `host[..m]`. Each letter adds at most one new palindrome.
pub fn distinct_palindromes_per_prefix(host: &[Letter]) -> Vec<usize> {
    // node 0: imaginary root of length -1, node 1: empty palindrome
    let mut nodes = vec![
        Node {
            len: -1,
            link: 0,
            edges: Vec::new(),
        },
        Node {
            len: 0,
            link: 0,
            edges: Vec::new(),
        },
    ];
    let mut counts = Vec::with_capacity(host.len() + 1);
    counts.push(1);
    let mut last = 1;
    for (i, &x) in host.iter().enumerate() {
        let fits = |v: usize, nodes: &[Node]| {
            let j = i as isize - nodes[v].len - 1;
            j >= 0 && host[j as usize] == x
        };
        let mut cur = last;
        while !fits(cur, &nodes) {
            cur = nodes[cur].link;
        }
        if let Some(existing) = nodes[cur].child(x) {
            last = existing;
        } else {
            let len = nodes[cur].len + 2;
            let link = if len == 1 {
                1
            } else {
                let mut v = nodes[cur].link;
                while !fits(v, &nodes) {
                    v = nodes[v].link;
                }
                nodes[v]
                    .child(x)
                    .expect("suffix palindrome already present")
            };
            nodes.push(Node {
                len,
                link,
                edges: Vec::new(),
            });
            let id = nodes.len() - 1;
            nodes[cur].edges.push((x, id));
            last = id;
        }
        counts.push(nodes.len() - 1);
    }
    counts
}
