//! Polynomials over `F_p` for small primes (`p < 2^32`): squarefree and
//! distinct-degree factorization, enough to read off splitting types.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Coefficients low degree first, reduced mod `p`, no trailing zeros.
pub type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

pub fn reduce(c: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(c.iter().map(|v| v.mod_floor(&pb).to_u64().unwrap()).collect())
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let li = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - db];
    for k in (db..r.len()).rev() {
        let c = mulmod(r[k], li, p);
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mulmod(c, bj, p);
            r[k - db + j] = (r[k - db + j] + p - t) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => {
            let li = inv(l, p);
            a.iter().map(|&x| mulmod(x, li, p)).collect()
        }
    }
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

fn powmod_poly(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            r = divrem(&mul(&r, &b, p), m, p).1;
        }
        b = divrem(&mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    r
}

/// `f = Π a_i^i` with `a_i` squarefree and coprime; returns `(a_i, i)`.
pub fn squarefree_decomposition(f: &Fp, p: u64) -> Vec<(Fp, u32)> {
    let f = monic(f, p);
    let mut out = Vec::new();
    sqf_rec(&f, p, 1, &mut out);
    out
}

fn sqf_rec(f: &Fp, p: u64, mult: u32, out: &mut Vec<(Fp, u32)>) {
    if f.len() <= 1 {
        return;
    }
    let d = derivative(f, p);
    if d.is_empty() {
        // f = g(x)^p: coefficients live at multiples of p
        let g: Fp = f.iter().step_by(p as usize).copied().collect();
        sqf_rec(&g, p, mult * p as u32, out);
        return;
    }
    let mut c = gcd(f, &d, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        let g: Fp = c.iter().step_by(p as usize).copied().collect();
        sqf_rec(&g, p, mult * p as u32, out);
    }
}

/// Degrees of the irreducible factors of a squarefree monic polynomial.
pub fn distinct_degree_degrees(f: &Fp, p: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0u32;
    while f.len() > 1 {
        d += 1;
        if 2 * d as usize > f.len() - 1 {
            out.push((f.len() - 1) as u32);
            break;
        }
        h = powmod_poly(&h, p, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            let k = (g.len() - 1) as u32 / d;
            out.extend(std::iter::repeat_n(d, k as usize));
            f = divrem(&f, &g, p).0;
            h = divrem(&h, &f, p).1;
        }
    }
    out
}

/// Splitting type: `(degree, multiplicity)` of each irreducible factor.
pub fn factor_degrees(f: &Fp, p: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for (a, e) in squarefree_decomposition(f, p) {
        for d in distinct_degree_degrees(&a, p) {
            out.push((d, e));
        }
    }
    out.sort_unstable();
    out
}

/// Product of the distinct monic irreducible factors.
pub fn radical(f: &Fp, p: u64) -> Fp {
    squarefree_decomposition(f, p)
        .into_iter()
        .fold(vec![1], |acc, (a, _)| mul(&acc, &a, p))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}
