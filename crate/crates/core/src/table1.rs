//! The bracket basis of f_{6,2} with its Jacobi relations, checked as identities
//! in word coordinates.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::lie::{build_graded_algebra, parse_bracket, TensorVector};
use crate::matrix::FpMatrix;
use crate::subspace::Subspace;

/// (k, j, bracket) for every basis element X_{k,j}.
pub const TABLE1_BASIS: &[(usize, usize, &str)] = &[
    (1, 1, "X1"),
    (1, 2, "X2"),
    (2, 1, "[X1,X2]"),
    (3, 1, "[X1,[X1,X2]]"),
    (3, 2, "[X2,[X1,X2]]"),
    (4, 1, "[X1,[X1,[X1,X2]]]"),
    (4, 2, "[X2,[X1,[X1,X2]]]"),
    (4, 3, "[X2,[X2,[X1,X2]]]"),
    (5, 1, "[X1,[X1,[X1,[X1,X2]]]]"),
    (5, 2, "[X1,[X2,[X1,[X1,X2]]]]"),
    (5, 3, "[X1,[X2,[X2,[X1,X2]]]]"),
    (5, 4, "[X2,[X1,[X1,[X1,X2]]]]"),
    (5, 5, "[X2,[X2,[X1,[X1,X2]]]]"),
    (5, 6, "[X2,[X2,[X2,[X1,X2]]]]"),
    (6, 1, "[X1,[X1,[X1,[X1,[X1,X2]]]]]"),
    (6, 2, "[X1,[X1,[X2,[X1,[X1,X2]]]]]"),
    (6, 3, "[X1,[X1,[X2,[X2,[X1,X2]]]]]"),
    (6, 4, "[X1,[X2,[X1,[X1,[X1,X2]]]]]"),
    (6, 5, "[X1,[X2,[X2,[X1,[X1,X2]]]]]"),
    (6, 6, "[X1,[X2,[X2,[X2,[X1,X2]]]]]"),
    (6, 7, "[X2,[X1,[X2,[X1,[X1,X2]]]]]"),
    (6, 8, "[X2,[X1,[X2,[X2,[X1,X2]]]]]"),
    (6, 9, "[X2,[X2,[X2,[X2,[X1,X2]]]]]"),
];

/// A term of a relation: coefficient times phi_i applied to X_{k,j}, or X_{k,j} itself
/// when `phi` is None.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub phi: Option<u8>,
    pub k: usize,
    pub j: usize,
}

const fn phi(coeff: i64, i: u8, k: usize, j: usize) -> Term {
    Term {
        coeff,
        phi: Some(i),
        k,
        j,
    }
}
const fn x(coeff: i64, k: usize, j: usize) -> Term {
    Term {
        coeff,
        phi: None,
        k,
        j,
    }
}

/// Each relation reads lhs = rhs.
pub struct Relation {
    pub label: &'static str,
    pub lhs: &'static [Term],
    pub rhs: &'static [Term],
}

pub const TABLE1_RELATIONS: &[Relation] = &[
    Relation {
        label: "X31 = phi1(X21)",
        lhs: &[x(1, 3, 1)],
        rhs: &[phi(1, 1, 2, 1)],
    },
    Relation {
        label: "X32 = phi2(X21)",
        lhs: &[x(1, 3, 2)],
        rhs: &[phi(1, 2, 2, 1)],
    },
    Relation {
        label: "X41 = phi1(X31)",
        lhs: &[x(1, 4, 1)],
        rhs: &[phi(1, 1, 3, 1)],
    },
    Relation {
        label: "X42 = phi2(X31)",
        lhs: &[x(1, 4, 2)],
        rhs: &[phi(1, 2, 3, 1)],
    },
    Relation {
        label: "phi2(X31) = phi1(X32)",
        lhs: &[phi(1, 2, 3, 1)],
        rhs: &[phi(1, 1, 3, 2)],
    },
    Relation {
        label: "X43 = phi2(X32)",
        lhs: &[x(1, 4, 3)],
        rhs: &[phi(1, 2, 3, 2)],
    },
    Relation {
        label: "X51 = phi1(X41)",
        lhs: &[x(1, 5, 1)],
        rhs: &[phi(1, 1, 4, 1)],
    },
    Relation {
        label: "X52 = phi1(X42)",
        lhs: &[x(1, 5, 2)],
        rhs: &[phi(1, 1, 4, 2)],
    },
    Relation {
        label: "X53 = phi1(X43)",
        lhs: &[x(1, 5, 3)],
        rhs: &[phi(1, 1, 4, 3)],
    },
    Relation {
        label: "X54 = phi2(X41)",
        lhs: &[x(1, 5, 4)],
        rhs: &[phi(1, 2, 4, 1)],
    },
    Relation {
        label: "X55 = phi2(X42)",
        lhs: &[x(1, 5, 5)],
        rhs: &[phi(1, 2, 4, 2)],
    },
    Relation {
        label: "X56 = phi2(X43)",
        lhs: &[x(1, 5, 6)],
        rhs: &[phi(1, 2, 4, 3)],
    },
    Relation {
        label: "X61 = phi1(X51)",
        lhs: &[x(1, 6, 1)],
        rhs: &[phi(1, 1, 5, 1)],
    },
    Relation {
        label: "X62 = phi1(X52)",
        lhs: &[x(1, 6, 2)],
        rhs: &[phi(1, 1, 5, 2)],
    },
    Relation {
        label: "phi1(X52) = 2 X64 - phi2(X51)",
        lhs: &[phi(1, 1, 5, 2)],
        rhs: &[x(2, 6, 4), phi(-1, 2, 5, 1)],
    },
    Relation {
        label: "X63 = phi1(X53)",
        lhs: &[x(1, 6, 3)],
        rhs: &[phi(1, 1, 5, 3)],
    },
    Relation {
        label: "phi1(X53) = phi2(X54) + 3 X65 - 3 X67",
        lhs: &[phi(1, 1, 5, 3)],
        rhs: &[phi(1, 2, 5, 4), x(3, 6, 5), x(-3, 6, 7)],
    },
    Relation {
        label: "X64 = phi1(X54)",
        lhs: &[x(1, 6, 4)],
        rhs: &[phi(1, 1, 5, 4)],
    },
    Relation {
        label: "X65 = phi1(X55)",
        lhs: &[x(1, 6, 5)],
        rhs: &[phi(1, 1, 5, 5)],
    },
    Relation {
        label: "X66 = phi1(X56)",
        lhs: &[x(1, 6, 6)],
        rhs: &[phi(1, 1, 5, 6)],
    },
    Relation {
        label: "phi1(X56) = 2 X68 - phi2(X55)",
        lhs: &[phi(1, 1, 5, 6)],
        rhs: &[x(2, 6, 8), phi(-1, 2, 5, 5)],
    },
    Relation {
        label: "X67 = phi2(X52)",
        lhs: &[x(1, 6, 7)],
        rhs: &[phi(1, 2, 5, 2)],
    },
    Relation {
        label: "X68 = phi2(X53)",
        lhs: &[x(1, 6, 8)],
        rhs: &[phi(1, 2, 5, 3)],
    },
    Relation {
        label: "X69 = phi2(X56)",
        lhs: &[x(1, 6, 9)],
        rhs: &[phi(1, 2, 5, 6)],
    },
];

/// X_{k,j} in word coordinates.
pub fn table1_element(field: PrimeField, k: usize, j: usize) -> Result<TensorVector> {
    let (_, _, s) = TABLE1_BASIS
        .iter()
        .find(|e| e.0 == k && e.1 == j)
        .ok_or_else(|| Error::Precondition(format!("no basis element X{k}{j}")))?;
    parse_bracket(field, s)
}

/// Rows X_{k,1}, X_{k,2}, ... in word coordinates.
pub fn table1_layer(field: PrimeField, k: usize) -> Result<FpMatrix> {
    let mut m = FpMatrix::zeros(field, 0, 1 << k);
    for &(kk, j, _) in TABLE1_BASIS.iter().filter(|e| e.0 == k) {
        m.push_row(table1_element(field, kk, j)?.coords());
    }
    if m.rows() == 0 {
        return Err(Error::Precondition(format!(
            "table covers layers 1..6, got {k}"
        )));
    }
    Ok(m)
}

/// Coordinates of a layer-k vector with respect to the table basis.
pub fn table1_coordinates(
    field: PrimeField,
    k: usize,
    v: &TensorVector,
) -> Result<Option<Vec<u32>>> {
    let basis = table1_layer(field, k)?;
    // solve c * basis = v through the left kernel of [basis; v]
    let mut m = basis.clone();
    m.push_row(v.coords());
    let ker = m.left_kernel();
    let n = basis.rows();
    for r in 0..ker.rows() {
        let last = ker.get(r, n);
        if last != 0 {
            let scale = field.neg(field.inv(last));
            return Ok(Some(
                (0..n).map(|c| field.mul(ker.get(r, c), scale)).collect(),
            ));
        }
    }
    Ok(None)
}

fn eval_terms(field: PrimeField, terms: &[Term]) -> Result<TensorVector> {
    let mut acc: Option<TensorVector> = None;
    for t in terms {
        let mut v = table1_element(field, t.k, t.j)?;
        if let Some(i) = t.phi {
            v = v.phi(i);
        }
        let v = v.scale(t.coeff);
        acc = Some(match acc {
            None => v,
            Some(a) => a.add(&v),
        });
    }
    acc.ok_or_else(|| Error::Precondition("empty side".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub pass: bool,
}

/// Every relation, the basis property of each layer against the algebra built from
/// phi images, and the dimension and Lambda sequences.
pub fn verify_table1(field: PrimeField) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for rel in TABLE1_RELATIONS {
        let pass = eval_terms(field, rel.lhs)? == eval_terms(field, rel.rhs)?;
        out.push(Check {
            label: rel.label.into(),
            pass,
        });
    }
    let alg = build_graded_algebra(6, field)?;
    for k in 1..=6 {
        let table = Subspace::span(&table1_layer(field, k)?);
        let layer = Subspace::span(&alg.layer(k).basis);
        let rows = TABLE1_BASIS.iter().filter(|e| e.0 == k).count();
        out.push(Check {
            label: format!("X{k}* is a basis of L{k}"),
            pass: table.dim() == rows && table == layer,
        });
    }
    out.push(Check {
        label: "dims (2,1,2,3,6,9)".into(),
        pass: alg.dims() == [2, 1, 2, 3, 6, 9],
    });
    out.push(Check {
        label: "l-sequence (1,0,1,0,3)".into(),
        pass: alg.l_values() == [1, 0, 1, 0, 3],
    });
    Ok(out)
}

/// phi(phi(I_4)) for I_4 spanned by X41 + a3 X43 and X42 + b3 X43, in table
/// coordinates of L6. Row order: phi1 phi1, phi1 phi2, phi2 phi1, phi2 phi2, each
/// applied to the two generators.
pub fn case11_double_image(field: PrimeField, a3: u32, b3: u32) -> Result<FpMatrix> {
    let x43 = table1_element(field, 4, 3)?;
    let gens = [
        table1_element(field, 4, 1)?.add(&x43.scale(a3 as i64)),
        table1_element(field, 4, 2)?.add(&x43.scale(b3 as i64)),
    ];
    let mut m = FpMatrix::zeros(field, 0, 9);
    for (outer, inner) in [(1u8, 1u8), (1, 2), (2, 1), (2, 2)] {
        for g in &gens {
            let v = g.phi(inner).phi(outer);
            let c = table1_coordinates(field, 6, &v)?.expect("lies in L6");
            m.push_row(&c);
        }
    }
    Ok(m)
}
