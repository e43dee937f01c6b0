//! Plain value-vector arithmetic, written without the library, used as an
//! independent reference in the integration tests.
#![allow(dead_code)]

pub type Map = Vec<usize>;

pub fn parse_rle(text: &str) -> Map {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        let (value, count): (usize, usize) = match token.split_once('_') {
            Some((v, c)) => (v.parse().unwrap(), c.parse().unwrap()),
            None => (token.parse().unwrap(), 1),
        };
        out.extend(std::iter::repeat_n(value, count));
    }
    out
}

/// `x ↦ g(f(x))`.
pub fn then(f: &Map, g: &Map) -> Map {
    f.iter().map(|&x| g[x]).collect()
}

pub fn join(f: &Map, g: &Map) -> Map {
    f.iter().zip(g).map(|(a, b)| *a.max(b)).collect()
}

pub fn jordan(a: &Map, b: &Map) -> Map {
    join(&then(a, b), &then(b, a))
}

pub fn leq(f: &Map, g: &Map) -> bool {
    f.iter().zip(g).all(|(a, b)| a <= b)
}

/// Every monotone map of `{0..n-1}` into the sorted vertex list.
pub fn simplex(n: usize, vertices: &[usize]) -> Vec<Map> {
    fn go(n: usize, vertices: &[usize], from: usize, prefix: &mut Map, out: &mut Vec<Map>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in from..vertices.len() {
            prefix.push(vertices[i]);
            go(n, vertices, i, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, vertices, 0, &mut Vec::new(), &mut out);
    out
}

/// Type as vertex indices.
pub fn type_of(f: &Map, vertices: &[usize]) -> Map {
    vertices
        .iter()
        .map(|&v| vertices.iter().position(|&w| w == f[v]).unwrap())
        .collect()
}

pub fn type_from_letters(text: &str) -> Map {
    text.split(',').map(|c| (c.as_bytes()[0] - b'a') as usize).collect()
}

pub fn leibniz_holds(alpha: &Map, beta: &Map, gamma: &Map) -> bool {
    let lhs = jordan(alpha, &then(beta, gamma));
    let rhs = join(&then(&jordan(alpha, beta), gamma), &then(beta, &jordan(alpha, gamma)));
    lhs == rhs
}
