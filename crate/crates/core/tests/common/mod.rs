#![allow(dead_code)]

use gradekit::autos::{inner_auto, ratio_candidates, AlgebraMap};
use gradekit::exactmath::{Cyclotomic, Field, ScalarMatrix, Subspace, Vector};
use gradekit::gradings::{bracket_table, Grading, Label};
use gradekit::liealg::make_sl;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Nonzero bracket relations (j, k, l) of a grading.
pub fn relations(g: &Grading) -> Vec<(usize, usize, usize)> {
    bracket_table(g).relations()
}

/// Indices whose values determine every other index through the relations.
fn closure(n: usize, rels: &[(usize, usize, usize)], seed: &[usize]) -> Vec<bool> {
    let mut known = vec![false; n];
    for &s in seed {
        known[s] = true;
    }
    loop {
        let mut changed = false;
        for &(j, k, l) in rels {
            if known[j] && known[k] && !known[l] {
                known[l] = true;
                changed = true;
            }
            if j != k && known[l] && known[j] && !known[k] {
                known[k] = true;
                changed = true;
            }
            if j != k && known[l] && known[k] && !known[j] {
                known[j] = true;
                changed = true;
            }
        }
        if !changed {
            return known;
        }
    }
}

pub fn generating_indices(g: &Grading) -> Vec<usize> {
    let rels = relations(g);
    let mut gens = Vec::new();
    for j in 0..g.len() {
        if !closure(g.len(), &rels, &gens)[j] {
            gens.push(j);
        }
    }
    gens
}

/// |Hom(G, ℤ_N)| for the universal group G, counted by brute force over
/// assignments to a generating set.
pub fn hom_count(g: &Grading, modulus: u64) -> u64 {
    let rels = relations(g);
    let gens = generating_indices(g);
    let n = g.len();
    let mut count = 0;
    let total = modulus.pow(gens.len() as u32);
    for code in 0..total {
        let mut val: Vec<Option<u64>> = vec![None; n];
        let mut c = code;
        for &s in &gens {
            val[s] = Some(c % modulus);
            c /= modulus;
        }
        let mut ok = true;
        loop {
            let mut changed = false;
            for &(j, k, l) in &rels {
                match (val[j], val[k], val[l]) {
                    (Some(a), Some(b), None) => {
                        val[l] = Some((a + b) % modulus);
                        changed = true;
                    }
                    (Some(a), None, Some(c)) if j != k => {
                        val[k] = Some((c + modulus - a) % modulus);
                        changed = true;
                    }
                    (None, Some(b), Some(c)) if j != k => {
                        val[j] = Some((c + modulus - b) % modulus);
                        changed = true;
                    }
                    (Some(a), Some(b), Some(c)) if (a + b) % modulus != c => {
                        ok = false;
                    }
                    _ => {}
                }
            }
            if !ok || !changed {
                break;
            }
        }
        if ok && val.iter().all(Option::is_some) {
            count += 1;
        }
    }
    count
}

/// |Hom(ℤ^r × ∏ℤ_d, ℤ_N)|
pub fn expected_hom_count(free_rank: u32, torsion: &[u64], modulus: u64) -> u64 {
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    modulus.pow(free_rank) * torsion.iter().map(|&d| gcd(d, modulus)).product::<u64>()
}

pub fn random_rational(f: &Field, rng: &mut ChaCha8Rng) -> Cyclotomic {
    let n: i64 = rng.gen_range(1..12);
    let d: i64 = rng.gen_range(1..6);
    f.from_ratio(if rng.gen_bool(0.5) { n } else { -n }, d)
}

/// Small random unimodular integer matrix: product of elementary moves.
pub fn random_unimodular(f: &Field, m: usize, rng: &mut ChaCha8Rng) -> ScalarMatrix {
    let mut a = ScalarMatrix::identity(f, m);
    for _ in 0..m + 1 {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        if i == j {
            continue;
        }
        let mut e = ScalarMatrix::identity(f, m);
        e.set(i, j, f.from_int(rng.gen_range(-1..=1)));
        a = a.mul(&e).unwrap();
    }
    a
}

struct Torus {
    field: Field,
    m: usize,
    conj: ScalarMatrix,
    diagonals: Vec<Vec<Cyclotomic>>,
}

/// Two commuting diagonal matrices of sl(m), m = 2, 3, 4, conjugated by a
/// random unimodular matrix. With `roots`, entries pick up random roots of
/// unity of the conductor-12 field, so finite-order factors appear.
fn random_torus(seed: u64, roots: bool) -> Torus {
    let field = Field::new(if roots { 12 } else { 4 }).unwrap();
    let units = field.roots_of_unity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 2 + (seed % 3) as usize;
    let conj = random_unimodular(&field, m, &mut rng);
    let diagonals = (0..2)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let r = random_rational(&field, &mut rng);
                    if roots && rng.gen_bool(0.5) {
                        &r * &units[rng.gen_range(0..units.len())]
                    } else {
                        r
                    }
                })
                .collect()
        })
        .collect();
    Torus { field, m, conj, diagonals }
}

/// The inner maps of `random_torus_grading` with their ratio candidates.
pub fn random_torus_generators(seed: u64, roots: bool) -> (Vec<AlgebraMap>, Vec<Vec<Cyclotomic>>) {
    let t = random_torus(seed, roots);
    let l = make_sl(&t.field, t.m).unwrap();
    let inv = t.conj.inverse().unwrap();
    t.diagonals
        .iter()
        .map(|d| {
            let a = t.conj.mul(&ScalarMatrix::diagonal(&t.field, d)).unwrap().mul(&inv).unwrap();
            (inner_auto(&l, &a).unwrap(), ratio_candidates(d).unwrap())
        })
        .unzip()
}

/// The grading cut out by the maps of `random_torus_generators`, written down
/// directly: C E_ij C^-1 carries the ratios d_i / d_j, the conjugated diagonal
/// matrices carry 1.
pub fn random_torus_grading(seed: u64, roots: bool) -> Grading {
    let t = random_torus(seed, roots);
    let f = &t.field;
    let l = make_sl(f, t.m).unwrap();
    let inv = t.conj.inverse().unwrap();
    let mut parts: Vec<(Vec<Cyclotomic>, Vec<Vector>)> = Vec::new();
    let mut add = |label: Vec<Cyclotomic>, x: ScalarMatrix| {
        let coords = l.coordinates(&t.conj.mul(&x).unwrap().mul(&inv).unwrap()).unwrap();
        match parts.iter_mut().find(|(k, _)| *k == label) {
            Some((_, v)) => v.push(coords),
            None => parts.push((label, vec![coords])),
        }
    };
    for i in 0..t.m {
        for j in 0..t.m {
            let mut x = ScalarMatrix::zeros(f, t.m, t.m);
            x.set(i, j, f.one());
            if i == j {
                if i + 1 == t.m {
                    continue;
                }
                x.set(i + 1, i + 1, -f.one());
                add(vec![f.one(); t.diagonals.len()], x);
            } else {
                add(t.diagonals.iter().map(|d| &d[i] * &d[j].inv().unwrap()).collect(), x);
            }
        }
    }
    let parts = parts
        .into_iter()
        .map(|(label, vs)| (Label::Eigen(label), Subspace::canonicalize(f, l.dim(), vs).unwrap()))
        .collect();
    Grading::new(&l, parts).unwrap()
}

/// Inertia from Descartes' rule on the characteristic polynomial
/// (Faddeev-LeVerrier); exact because the roots are real.
pub fn descartes_inertia(m: &ScalarMatrix) -> (usize, usize, usize) {
    let n = m.rows();
    let a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| m.get(i, j).as_rational().unwrap().clone()).collect()).collect();
    let mul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(BigRational::zero(), |s, k| s + &x[i][k] * &y[k][j])).collect())
            .collect()
    };
    // c[k] is the coefficient of x^k
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::from_integer(1.into());
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mul(&a, &mk);
        let tr = (0..n).fold(BigRational::zero(), |s, i| s + &am[i][i]);
        c[n - k] = -tr / BigRational::from_integer((k as i64).into());
    }
    let zero = c.iter().position(|x| !x.is_zero()).unwrap();
    let changes = |flip: bool| {
        let signs: Vec<bool> = c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| x.is_positive() ^ (flip && k % 2 == 1))
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    (changes(false), changes(true), zero)
}
