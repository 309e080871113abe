//! Dense real eigendecomposition for the small matrices of this crate.
//!
//! Two solvers:
//!
//! * [`eigen_symmetric`] — cyclic Jacobi, used for Gram matrices.
//! * [`eigen_real`] — Householder reduction to Hessenberg form followed by
//!   Francis double-shift QR with accumulated transformations and
//!   back-substitution for eigenvectors. This is the classical
//!   EISPACK `orthes`/`hqr2` pair, specialized to the sizes (<= 11) met here.
//!
//! Complex eigenvalues come out as conjugate pairs `re[k] +/- i*im[k]` in
//! adjacent positions; the corresponding columns `k`, `k+1` of `vectors`
//! hold the real and imaginary parts of one complex eigenvector.

use alloc::vec;
use alloc::vec::Vec;

use crate::mat::Mat;
use crate::real;

/// Eigenvalues and eigenvectors of a general real matrix.
#[derive(Debug, Clone)]
pub struct RealEigen {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    /// Columns are eigenvectors (real/imag pairs for complex eigenvalues).
    pub vectors: Mat,
}

impl RealEigen {
    /// Moduli of all eigenvalues.
    pub fn moduli(&self) -> Vec<f64> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| real::hypot(r, i))
            .collect()
    }

    /// Eigenvector column for a real eigenvalue index, normalized to
    /// Euclidean length 1.
    pub fn real_vector(&self, k: usize) -> Vec<f64> {
        let mut v = self.vectors.col(k);
        let n = real::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        if n > 0.0 {
            for x in v.iter_mut() {
                *x /= n;
            }
        }
        v
    }
}

/// Jacobi eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues (ascending) and the matrix whose columns are the
/// corresponding orthonormal eigenvectors.
pub fn eigen_symmetric(a: &Mat) -> (Vec<f64>, Mat) {
    assert!(a.is_square());
    let n = a.rows();
    let mut a = a.clone();
    let mut v = Mat::identity(n);
    for _sweep in 0..64 {
        let mut off = 0.0_f64;
        for i in 0..n {
            for j in i + 1..n {
                off = off.max(a[(i, j)].abs());
            }
        }
        if off < 1e-15 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-18 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = {
                    let s = if theta >= 0.0 { 1.0 } else { -1.0 };
                    s / (theta.abs() + real::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / real::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let vals: Vec<f64> = idx.iter().map(|&i| a[(i, i)]).collect();
    let mut vecs = Mat::zeros(n, n);
    for (newj, &oldj) in idx.iter().enumerate() {
        vecs.set_col(newj, &v.col(oldj));
    }
    (vals, vecs)
}

/// Full eigendecomposition of a general real square matrix.
pub fn eigen_real(a: &Mat) -> RealEigen {
    assert!(a.is_square());
    let n = a.rows();
    let mut h = a.clone();
    let mut v = Mat::identity(n);
    orthes(&mut h, &mut v);
    let (re, im) = hqr2(&mut h, &mut v);
    RealEigen { re, im, vectors: v }
}

/// Householder reduction of `h` to upper Hessenberg form, accumulating the
/// orthogonal transformation into `v`.
fn orthes(h: &mut Mat, v: &mut Mat) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let low = 0usize;
    let high = n - 1;
    let mut ort = vec![0.0_f64; n];

    for m in low + 1..high {
        let mut scale = 0.0;
        for i in m..=high {
            scale += h[(i, m - 1)].abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut hsum = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            hsum += ort[i] * ort[i];
        }
        let mut g = real::sqrt(hsum);
        if ort[m] > 0.0 {
            g = -g;
        }
        hsum -= ort[m] * g;
        ort[m] -= g;

        for j in m..n {
            let mut f = 0.0;
            for i in (m..=high).rev() {
                f += ort[i] * h[(i, j)];
            }
            f /= hsum;
            for i in m..=high {
                h[(i, j)] -= f * ort[i];
            }
        }
        for i in 0..=high {
            let mut f = 0.0;
            for j in (m..=high).rev() {
                f += ort[j] * h[(i, j)];
            }
            f /= hsum;
            for j in m..=high {
                h[(i, j)] -= f * ort[j];
            }
        }
        ort[m] *= scale;
        h[(m, m - 1)] = scale * g;
    }

    // Accumulate transformations.
    for m in (low + 1..high).rev() {
        if h[(m, m - 1)] == 0.0 {
            continue;
        }
        for i in m + 1..=high {
            ort[i] = h[(i, m - 1)];
        }
        for j in m..=high {
            let mut g = 0.0;
            for i in m..=high {
                g += ort[i] * v[(i, j)];
            }
            g = (g / ort[m]) / h[(m, m - 1)];
            for i in m..=high {
                v[(i, j)] += g * ort[i];
            }
        }
    }
}

fn cdiv(xr: f64, xi: f64, yr: f64, yi: f64) -> (f64, f64) {
    if yr.abs() > yi.abs() {
        let r = yi / yr;
        let d = yr + r * yi;
        ((xr + r * xi) / d, (xi - r * xr) / d)
    } else {
        let r = yr / yi;
        let d = yi + r * yr;
        ((r * xr + xi) / d, (r * xi - xr) / d)
    }
}

/// Francis QR on a Hessenberg matrix with accumulated transformations,
/// followed by back-substitution for the eigenvectors of the original
/// matrix. Returns (re, im) of all eigenvalues.
#[allow(clippy::needless_range_loop)]
fn hqr2(h: &mut Mat, v: &mut Mat) -> (Vec<f64>, Vec<f64>) {
    let nn = h.rows();
    let mut d = vec![0.0_f64; nn];
    let mut e = vec![0.0_f64; nn];
    if nn == 0 {
        return (d, e);
    }
    let low = 0isize;
    let high = nn as isize - 1;
    let eps = f64::EPSILON;
    let mut exshift = 0.0;
    let (mut p, mut q, mut r, mut s, mut z): (f64, f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0, 0.0);
    let (mut w, mut x, mut y): (f64, f64, f64);

    // Matrix max-norm over the relevant band.
    let mut norm = 0.0_f64;
    for i in 0..nn {
        let j0 = i.saturating_sub(1);
        for j in j0..nn {
            norm += h[(i, j)].abs();
        }
    }
    if norm == 0.0 {
        return (d, e);
    }

    let mut n = high;
    let mut iter = 0i32;
    while n >= low {
        // Look for a single small subdiagonal element.
        let mut l = n;
        while l > low {
            s = h[((l - 1) as usize, (l - 1) as usize)].abs() + h[(l as usize, l as usize)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[(l as usize, (l - 1) as usize)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // One root found.
            let nu = n as usize;
            h[(nu, nu)] += exshift;
            d[nu] = h[(nu, nu)];
            e[nu] = 0.0;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // Two roots found.
            let nu = n as usize;
            w = h[(nu, nu - 1)] * h[(nu - 1, nu)];
            p = (h[(nu - 1, nu - 1)] - h[(nu, nu)]) / 2.0;
            q = p * p + w;
            z = real::sqrt(q.abs());
            h[(nu, nu)] += exshift;
            h[(nu - 1, nu - 1)] += exshift;
            x = h[(nu, nu)];
            if q >= 0.0 {
                // Real pair.
                z = if p >= 0.0 { p + z } else { p - z };
                d[nu - 1] = x + z;
                d[nu] = d[nu - 1];
                if z != 0.0 {
                    d[nu] = x - w / z;
                }
                e[nu - 1] = 0.0;
                e[nu] = 0.0;
                x = h[(nu, nu - 1)];
                s = x.abs() + z.abs();
                p = x / s;
                q = z / s;
                r = real::sqrt(p * p + q * q);
                p /= r;
                q /= r;
                for j in nu - 1..nn {
                    z = h[(nu - 1, j)];
                    h[(nu - 1, j)] = q * z + p * h[(nu, j)];
                    h[(nu, j)] = q * h[(nu, j)] - p * z;
                }
                for i in 0..=nu {
                    z = h[(i, nu - 1)];
                    h[(i, nu - 1)] = q * z + p * h[(i, nu)];
                    h[(i, nu)] = q * h[(i, nu)] - p * z;
                }
                for i in low as usize..=high as usize {
                    z = v[(i, nu - 1)];
                    v[(i, nu - 1)] = q * z + p * v[(i, nu)];
                    v[(i, nu)] = q * v[(i, nu)] - p * z;
                }
            } else {
                // Complex pair.
                d[nu - 1] = x + p;
                d[nu] = x + p;
                e[nu - 1] = z;
                e[nu] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            // No convergence yet: form shift.
            let nu = n as usize;
            x = h[(nu, nu)];
            y = 0.0;
            w = 0.0;
            if l < n {
                y = h[(nu - 1, nu - 1)];
                w = h[(nu, nu - 1)] * h[(nu - 1, nu)];
            }
            if iter == 10 || iter == 20 {
                // Exceptional shift.
                exshift += x;
                for i in low as usize..=nu {
                    h[(i, i)] -= x;
                }
                s = h[(nu, nu - 1)].abs() + h[(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            iter += 1;
            assert!(iter < 60, "QR iteration failed to converge");

            // Two consecutive small subdiagonal elements.
            let mut m = n - 2;
            while m >= l {
                let mu = m as usize;
                z = h[(mu, mu)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[(mu + 1, mu)] + h[(mu, mu + 1)];
                q = h[(mu + 1, mu + 1)] - z - r - s;
                r = h[(mu + 2, mu + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[(mu, mu - 1)].abs() * (q.abs() + r.abs())
                    < eps
                        * (p.abs()
                            * (h[(mu - 1, mu - 1)].abs() + z.abs() + h[(mu + 1, mu + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2..=n).map(|i| i as usize) {
                h[(i, i - 2)] = 0.0;
                if i as isize > m + 2 {
                    h[(i, i - 3)] = 0.0;
                }
            }

            // Double QR step on rows l..n and columns m..n.
            for k in m..n {
                let ku = k as usize;
                let notlast = k != n - 1;
                if k != m {
                    p = h[(ku, ku - 1)];
                    q = h[(ku + 1, ku - 1)];
                    r = if notlast { h[(ku + 2, ku - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = real::sqrt(p * p + q * q + r * r);
                if p < 0.0 {
                    s = -s;
                }
                if s == 0.0 {
                    continue;
                }
                if k != m {
                    h[(ku, ku - 1)] = -s * x;
                } else if l != m {
                    h[(ku, ku - 1)] = -h[(ku, ku - 1)];
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;

                for j in ku..nn {
                    p = h[(ku, j)] + q * h[(ku + 1, j)];
                    if notlast {
                        p += r * h[(ku + 2, j)];
                        h[(ku + 2, j)] -= p * z;
                    }
                    h[(ku, j)] -= p * x;
                    h[(ku + 1, j)] -= p * y;
                }
                let imax = core::cmp::min(n, k + 3) as usize;
                for i in 0..=imax {
                    p = x * h[(i, ku)] + y * h[(i, ku + 1)];
                    if notlast {
                        p += z * h[(i, ku + 2)];
                        h[(i, ku + 2)] -= p * r;
                    }
                    h[(i, ku)] -= p;
                    h[(i, ku + 1)] -= p * q;
                }
                for i in low as usize..=high as usize {
                    p = x * v[(i, ku)] + y * v[(i, ku + 1)];
                    if notlast {
                        p += z * v[(i, ku + 2)];
                        v[(i, ku + 2)] -= p * r;
                    }
                    v[(i, ku)] -= p;
                    v[(i, ku + 1)] -= p * q;
                }
            }
        }
    }

    // Back-substitute to find vectors of the upper triangular form.
    for nb in (0..nn).rev() {
        p = d[nb];
        q = e[nb];
        if q == 0.0 {
            // Real vector.
            let mut l = nb;
            h[(nb, nb)] = 1.0;
            for i in (0..nb).rev() {
                w = h[(i, i)] - p;
                r = 0.0;
                for j in l..=nb {
                    r += h[(i, j)] * h[(j, nb)];
                }
                if e[i] < 0.0 {
                    z = w;
                    s = r;
                } else {
                    l = i;
                    if e[i] == 0.0 {
                        h[(i, nb)] = if w != 0.0 { -r / w } else { -r / (eps * norm) };
                    } else {
                        // Solve real 2x2 block.
                        x = h[(i, i + 1)];
                        y = h[(i + 1, i)];
                        let qq = (d[i] - p) * (d[i] - p) + e[i] * e[i];
                        let t = (x * s - z * r) / qq;
                        h[(i, nb)] = t;
                        h[(i + 1, nb)] = if x.abs() > z.abs() {
                            (-r - w * t) / x
                        } else {
                            (-s - y * t) / z
                        };
                    }
                    // Overflow control.
                    let t = h[(i, nb)].abs();
                    if (eps * t) * t > 1.0 {
                        for j in i..=nb {
                            h[(j, nb)] /= t;
                        }
                    }
                }
            }
        } else if q < 0.0 && nb > 0 {
            // Complex vector for the pair at (nb-1, nb).
            let mut l = nb - 1;
            if h[(nb, nb - 1)].abs() > h[(nb - 1, nb)].abs() {
                h[(nb - 1, nb - 1)] = q / h[(nb, nb - 1)];
                h[(nb - 1, nb)] = -(h[(nb, nb)] - p) / h[(nb, nb - 1)];
            } else {
                let (cr, ci) = cdiv(0.0, -h[(nb - 1, nb)], h[(nb - 1, nb - 1)] - p, q);
                h[(nb - 1, nb - 1)] = cr;
                h[(nb - 1, nb)] = ci;
            }
            h[(nb, nb - 1)] = 0.0;
            h[(nb, nb)] = 1.0;
            if nb >= 2 {
                for i in (0..=nb - 2).rev() {
                    let mut ra = 0.0;
                    let mut sa = 0.0;
                    for j in l..=nb {
                        ra += h[(i, j)] * h[(j, nb - 1)];
                        sa += h[(i, j)] * h[(j, nb)];
                    }
                    w = h[(i, i)] - p;
                    if e[i] < 0.0 {
                        z = w;
                        r = ra;
                        s = sa;
                    } else {
                        l = i;
                        if e[i] == 0.0 {
                            let (cr, ci) = cdiv(-ra, -sa, w, q);
                            h[(i, nb - 1)] = cr;
                            h[(i, nb)] = ci;
                        } else {
                            // Solve complex 2x2 block.
                            x = h[(i, i + 1)];
                            y = h[(i + 1, i)];
                            let mut vr = (d[i] - p) * (d[i] - p) + e[i] * e[i] - q * q;
                            let vi = (d[i] - p) * 2.0 * q;
                            if vr == 0.0 && vi == 0.0 {
                                vr = eps
                                    * norm
                                    * (w.abs() + q.abs() + x.abs() + y.abs() + z.abs());
                            }
                            let (cr, ci) =
                                cdiv(x * r - z * ra + q * sa, x * s - z * sa - q * ra, vr, vi);
                            h[(i, nb - 1)] = cr;
                            h[(i, nb)] = ci;
                            if x.abs() > z.abs() + q.abs() {
                                h[(i + 1, nb - 1)] =
                                    (-ra - w * h[(i, nb - 1)] + q * h[(i, nb)]) / x;
                                h[(i + 1, nb)] = (-sa - w * h[(i, nb)] - q * h[(i, nb - 1)]) / x;
                            } else {
                                let (cr, ci) =
                                    cdiv(-r - y * h[(i, nb - 1)], -s - y * h[(i, nb)], z, q);
                                h[(i + 1, nb - 1)] = cr;
                                h[(i + 1, nb)] = ci;
                            }
                        }
                        // Overflow control.
                        let t = h[(i, nb - 1)].abs().max(h[(i, nb)].abs());
                        if (eps * t) * t > 1.0 {
                            for j in i..=nb {
                                h[(j, nb - 1)] /= t;
                                h[(j, nb)] /= t;
                            }
                        }
                    }
                }
            }
        }
    }

    // Back-transform to eigenvectors of the original matrix.
    for j in (0..nn).rev() {
        for i in 0..nn {
            let mut zz = 0.0;
            for k in 0..=j {
                zz += v[(i, k)] * h[(k, j)];
            }
            v[(i, j)] = zz;
        }
    }

    (d, e)
}

/// Coefficients of the characteristic polynomial
/// `det(xI - A) = x^n + c[0] x^{n-1} + ... + c[n-1]`
/// by the Faddeev-LeVerrier recursion. Used to cross-validate the QR path.
pub fn char_poly(a: &Mat) -> Vec<f64> {
    assert!(a.is_square());
    let n = a.rows();
    let mut c = vec![0.0_f64; n];
    let mut m = Mat::identity(n);
    for k in 1..=n {
        m = a.mul(&m);
        let tr: f64 = (0..n).map(|i| m[(i, i)]).sum();
        let ck = -tr / k as f64;
        c[k - 1] = ck;
        for i in 0..n {
            m[(i, i)] += ck;
        }
    }
    c
}

/// Companion matrix of the monic polynomial with the given coefficients
/// (`c` as produced by [`char_poly`]).
pub fn companion(c: &[f64]) -> Mat {
    let n = c.len();
    let mut m = Mat::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[n - 1 - i];
    }
    m
}
