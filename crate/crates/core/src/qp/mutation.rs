//! Premutation, splitting off the trivial part, and mutation of quivers with potential.

use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Arrow, QpError, QuiverWithPotential};

fn star(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// Adds composite arrows `[ab]` through `k`, reverses the arrows at `k` and adds the cycles
/// `[ab] b* a*`.
pub fn premutation(qp: &QuiverWithPotential, k: usize) -> Result<QuiverWithPotential, QpError> {
    if k >= qp.vertices {
        return Err(QpError::BadVertex(k));
    }
    if let Some(a) = qp.arrows.iter().find(|a| a.source == a.target) {
        return Err(QpError::LoopPresent(a.source));
    }
    if qp.on_two_cycle(k) {
        return Err(QpError::VertexOnTwoCycle(k));
    }
    let mut arrows: Vec<Arrow> = qp
        .arrows
        .iter()
        .map(|a| {
            if a.source == k || a.target == k {
                Arrow { name: star(&a.name), source: a.target, target: a.source }
            } else {
                a.clone()
            }
        })
        .collect();
    let outgoing: Vec<usize> = (0..qp.arrows.len()).filter(|&i| qp.arrows[i].source == k).collect();
    let incoming: Vec<usize> = (0..qp.arrows.len()).filter(|&i| qp.arrows[i].target == k).collect();
    let mut composite = HashMap::new();
    for &alpha in &outgoing {
        for &beta in &incoming {
            let (a, b) = (&qp.arrows[alpha], &qp.arrows[beta]);
            composite.insert((alpha, beta), arrows.len());
            arrows.push(Arrow { name: format!("[{}{}]", a.name, b.name), source: b.source, target: a.target });
        }
    }
    let mut names = HashSet::new();
    if let Some(dup) = arrows.iter().find(|a| !names.insert(a.name.clone())) {
        return Err(QpError::DuplicateArrow(dup.name.clone()));
    }
    let mut terms = Vec::new();
    for (word, c) in &qp.potential {
        // Rotate so the cycle is based away from k; then every visit to k is a consecutive pair.
        let m = word.len();
        let r = (0..m).find(|&r| qp.arrows[word[r]].target != k).expect("no loops, so some base point differs from k");
        let rotated: Vec<usize> = word[r..].iter().chain(&word[..r]).copied().collect();
        let mut new_word = Vec::with_capacity(m);
        let mut i = 0;
        while i < m {
            if qp.arrows[rotated[i]].source == k {
                new_word.push(composite[&(rotated[i], rotated[i + 1])]);
                i += 2;
            } else {
                new_word.push(rotated[i]);
                i += 1;
            }
        }
        terms.push((new_word, c.clone()));
    }
    for (&(alpha, beta), &ab) in &composite {
        terms.push((vec![ab, beta, alpha], BigRational::one()));
    }
    Ok(QuiverWithPotential::from_parts(qp.vertices, arrows, terms, qp.truncation))
}

/// Splitting into a trivial and a reduced quiver with potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub trivial: QuiverWithPotential,
    pub reduced: QuiverWithPotential,
}

fn quadratic_partners(qp: &QuiverWithPotential, x: usize) -> Vec<(usize, BigRational)> {
    qp.potential
        .iter()
        .filter(|(w, _)| w.len() == 2 && w.contains(&x))
        .map(|(w, c)| (if w[0] == x { w[1] } else { w[0] }, c.clone()))
        .collect()
}

/// Diagonalizes the quadratic part into pairs `a_p b_p` by linear changes of arrows, then removes
/// the paired arrows from higher terms degree by degree up to the truncation.
pub fn reduce(qp: &QuiverWithPotential) -> Result<Reduction, QpError> {
    let mut w = qp.clone();
    let mut partner: HashMap<usize, usize> = HashMap::new();
    let mut pairs = Vec::new();
    loop {
        let next = w
            .potential
            .keys()
            .find(|k| k.len() == 2 && !partner.contains_key(&k[0]) && !partner.contains_key(&k[1]))
            .cloned();
        let Some(word) = next else { break };
        let (a0, b0) = (word[0], word[1]);
        if a0 == b0 {
            return Err(QpError::DegenerateQuadraticPart);
        }
        // Replace b0 by the combination paired with a0.
        let row = quadratic_partners(&w, a0);
        let m0 = row.iter().find(|(b, _)| *b == b0).map(|(_, c)| c.clone()).expect("pivot present");
        let mut image = vec![(vec![b0], m0.recip())];
        image.extend(row.iter().filter(|(b, _)| *b != b0).map(|(b, c)| (vec![*b], -c / &m0)));
        w.substitute(&HashMap::from([(b0, image)]));
        // Absorb the remaining partners of b0 into a0.
        let col = quadratic_partners(&w, b0);
        let mut image = vec![(vec![a0], BigRational::one())];
        image.extend(col.iter().filter(|(a, _)| *a != a0).map(|(a, c)| (vec![*a], -c)));
        w.substitute(&HashMap::from([(a0, image)]));
        partner.insert(a0, b0);
        partner.insert(b0, a0);
        pairs.push((a0, b0));
    }
    for d in 3..=w.truncation {
        loop {
            let offending: Vec<(Vec<usize>, BigRational)> = w
                .potential
                .iter()
                .filter(|(k, _)| k.len() == d && k.iter().any(|x| partner.contains_key(x)))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect();
            if offending.is_empty() {
                break;
            }
            let mut map: HashMap<usize, Vec<(Vec<usize>, BigRational)>> = HashMap::new();
            for (word, c) in offending {
                // t w with t paired to p: p -> p - c w cancels it against the quadratic term t p.
                let i = word.iter().position(|x| partner.contains_key(x)).expect("has a paired arrow");
                let rest: Vec<usize> = word[i + 1..].iter().chain(&word[..i]).copied().collect();
                let p = partner[&word[i]];
                map.entry(p).or_insert_with(|| vec![(vec![p], BigRational::one())]).push((rest, -c));
            }
            w.substitute(&map);
        }
    }
    let trivial_arrows: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let kept: Vec<usize> = (0..w.arrows.len()).filter(|i| !partner.contains_key(i)).collect();
    let mut reduced = w.restrict(&kept);
    reduced.potential.retain(|k, c| k.len() > 2 && !c.is_zero());
    Ok(Reduction { trivial: w.restrict(&trivial_arrows), reduced })
}

/// Reduced part of the premutation at `k`.
pub fn mutate_qp(qp: &QuiverWithPotential, k: usize) -> Result<QuiverWithPotential, QpError> {
    if k < qp.vertices && qp.on_two_cycle(k) {
        return Err(QpError::TwoCycleAtVertex(k));
    }
    Ok(reduce(&premutation(qp, k)?)?.reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{jacobian_dimension, three_cycle};

    #[test]
    fn premutation_of_abc() {
        let qp = three_cycle(12).with_cycle(&["a", "b", "c"], 1).unwrap();
        let pre = premutation(&qp, 1).unwrap();
        let names: Vec<&str> = pre.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["a*", "b*", "c", "[ab]"]);
        let ab = &pre.arrows()[3];
        assert_eq!((ab.source, ab.target), (0, 2));
        assert_eq!(pre.potential_string(), "a*[ab]b* + c[ab]");
    }

    #[test]
    fn mutation_of_abc_is_acyclic() {
        let qp = three_cycle(12).with_cycle(&["a", "b", "c"], 1).unwrap();
        let red = reduce(&premutation(&qp, 1).unwrap()).unwrap();
        assert_eq!(red.trivial.potential_string(), "c[ab]");
        let mu = red.reduced;
        let arrows: Vec<(String, usize, usize)> = mu.arrows().iter().map(|a| (a.name.clone(), a.source, a.target)).collect();
        assert_eq!(arrows, [("a*".to_string(), 2, 1), ("b*".to_string(), 1, 0)]);
        assert!(mu.potential().is_empty());
    }

    #[test]
    fn mutation_of_abc_squared_keeps_two_cycle() {
        let qp = three_cycle(12).with_cycle(&["a", "b", "c", "a", "b", "c"], 1).unwrap();
        let mu = mutate_qp(&qp, 1).unwrap();
        assert_eq!(mu.arrows().len(), 4);
        assert!(mu.has_two_cycles());
        assert_eq!(mu.potential_string(), "a*[ab]b* + c[ab]c[ab]");
        assert_eq!(mutate_qp(&mu, 0), Err(QpError::TwoCycleAtVertex(0)));
        assert_eq!(premutation(&mu, 2), Err(QpError::VertexOnTwoCycle(2)));
    }

    #[test]
    fn double_mutation_restores_quiver_and_dimension() {
        let qp = three_cycle(12).with_cycle(&["a", "b", "c"], 1).unwrap();
        let back = mutate_qp(&mutate_qp(&qp, 1).unwrap(), 1).unwrap();
        assert_eq!(back.arrow_counts(), qp.arrow_counts());
        assert_eq!(jacobian_dimension(&back, 6), jacobian_dimension(&qp, 6));
    }

    #[test]
    fn sink_mutation_reverses_arrows() {
        let qp = QuiverWithPotential::new(2, vec![Arrow { name: "x".into(), source: 0, target: 1 }], 6).unwrap();
        let mu = mutate_qp(&qp, 1).unwrap();
        assert_eq!(mu.arrows(), [Arrow { name: "x*".into(), source: 1, target: 0 }]);
        assert!(mu.potential().is_empty());
    }

    #[test]
    fn reduction_needs_linear_change() {
        // Two arrows each way between 1 and 2 with a mixed quadratic part and a cubic tail.
        let arrow = |name: &str, source, target| Arrow { name: name.into(), source, target };
        let arrows = vec![arrow("p", 0, 1), arrow("q", 0, 1), arrow("r", 1, 0), arrow("s", 1, 0), arrow("t", 1, 2), arrow("u", 2, 0)];
        let qp = QuiverWithPotential::new(3, arrows, 8)
            .unwrap()
            .with_cycle(&["p", "r"], 1)
            .unwrap()
            .with_cycle(&["p", "s"], 2)
            .unwrap()
            .with_cycle(&["q", "r"], 3)
            .unwrap()
            .with_cycle(&["u", "t", "p"], 1)
            .unwrap();
        let red = reduce(&qp).unwrap();
        let names: Vec<&str> = red.reduced.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["t", "u"]);
        assert!(red.reduced.potential().is_empty());
        assert_eq!(red.trivial.arrows().len(), 4);
        // Relations give r = q = p = 0 and s = -ut/2, leaving the paths of 2 -> 3 -> 1.
        let full = jacobian_dimension(&qp, 6);
        assert_eq!(full, jacobian_dimension(&red.reduced, 6));
        assert_eq!((full.dimension, full.saturated), (6, true));
    }
}
