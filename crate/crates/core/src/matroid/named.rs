use crate::error::{Error, Result};
use crate::field::{prime_power, Field, FiniteField};

use super::Matroid;

fn bits(v: u8) -> String {
    format!("{}{}{}", (v >> 2) & 1, (v >> 1) & 1, v & 1)
}

fn fano_lines() -> Vec<[u8; 3]> {
    let mut lines = Vec::new();
    for a in 1u8..8 {
        for b in a + 1..8 {
            let c = a ^ b;
            if c > b {
                lines.push([a, b, c]);
            }
        }
    }
    lines
}

/// The seven points of the projective plane over `F_2`, named by their
/// coordinate vectors ("100", "010", ...).
pub fn fano() -> Matroid {
    let elements = (1u8..8).map(bits).collect();
    let flats = fano_lines()
        .into_iter()
        .map(|l| l.iter().map(|&v| bits(v)).collect())
        .collect();
    Matroid::new(elements, flats).expect("Fano plane is a matroid")
}

/// The Fano plane with the line {110, 101, 011} broken into three pairs.
pub fn non_fano() -> Matroid {
    let elements = (1u8..8).map(bits).collect();
    let broken = [0b011, 0b101, 0b110];
    let mut flats: Vec<Vec<String>> = Vec::new();
    for l in fano_lines() {
        if l.iter().all(|v| broken.contains(v)) {
            for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                flats.push(vec![bits(l[x]), bits(l[y])]);
            }
        } else {
            flats.push(l.iter().map(|&v| bits(v)).collect());
        }
    }
    Matroid::new(elements, flats).expect("non-Fano is a matroid")
}

/// Uniform matroid `U_{3,n}`: every pair is a flat.
pub fn uniform(n: usize) -> Matroid {
    assert!(n >= 3, "U_{{3,n}} needs n >= 3");
    let elements: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut flats = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            flats.push(vec![elements[a].clone(), elements[b].clone()]);
        }
    }
    Matroid::new(elements, flats).expect("uniform matroid")
}

pub fn u34() -> Matroid {
    uniform(4)
}

/// One-element extension of `U_{2,n-1}`: the flat {1..n-1} plus the
/// apex `n` joined to each of them by a two-element flat.
pub fn u2ext(n: usize) -> Matroid {
    assert!(n >= 3, "u2ext needs n >= 3");
    let elements: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut flats = vec![elements[..n - 1].to_vec()];
    for e in &elements[..n - 1] {
        flats.push(vec![e.clone(), elements[n - 1].clone()]);
    }
    Matroid::new(elements, flats).expect("u2ext is a matroid")
}

/// Two flats of sizes `a+1` and `b+1` through the common element `c`; all
/// remaining pairs are two-element flats.
pub fn two_flat(a: usize, b: usize) -> Matroid {
    assert!(a >= 1 && b >= 1, "two_flat needs a, b >= 1");
    let left: Vec<String> = (1..=a).map(|i| format!("a{i}")).collect();
    let right: Vec<String> = (1..=b).map(|i| format!("b{i}")).collect();
    let mut elements = vec!["c".to_string()];
    elements.extend(left.iter().cloned());
    elements.extend(right.iter().cloned());
    let mut flats = Vec::new();
    let mut fl = vec!["c".to_string()];
    fl.extend(left.iter().cloned());
    flats.push(fl);
    let mut fr = vec!["c".to_string()];
    fr.extend(right.iter().cloned());
    flats.push(fr);
    for x in &left {
        for y in &right {
            flats.push(vec![x.clone(), y.clone()]);
        }
    }
    Matroid::new(elements, flats).expect("two_flat is a matroid")
}

/// The five vectors 100, 101, 001, 011, 010: two 3-point lines through 001.
pub fn five_point() -> Matroid {
    let elements = vec!["100", "101", "001", "011", "010"];
    let flats = vec![
        vec!["100", "101", "001"],
        vec!["001", "011", "010"],
        vec!["100", "011"],
        vec!["100", "010"],
        vec!["101", "011"],
        vec!["101", "010"],
    ];
    Matroid::new(elements, flats).expect("five_point is a matroid")
}

/// Pairwise intersection points of four generic lines, named by the pair
/// of lines ("12", "13", ...).
pub fn four_lines() -> Matroid {
    let pairs = ["12", "13", "14", "23", "24", "34"];
    let mut flats: Vec<Vec<&str>> = (b'1'..=b'4')
        .map(|l| pairs.iter().copied().filter(|p| p.as_bytes().contains(&l)).collect())
        .collect();
    flats.extend([vec!["12", "34"], vec!["13", "24"], vec!["14", "23"]]);
    Matroid::new(pairs.to_vec(), flats).expect("four_lines is a matroid")
}

/// All points of the projective plane over `F_q`, flats the lines.
pub fn pg2(q: u64) -> Result<Matroid> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::Argument(format!("{q} is not a prime power")))?;
    let field = FiniteField::new(p as u32, k)?;
    let points = crate::projective::all_points(&field);
    let names: Vec<String> = points
        .iter()
        .map(|pt| pt.coords().iter().map(|c| field.elem_to_string(c)).collect::<Vec<_>>().join(":"))
        .map(|s| format!("({s})"))
        .collect();
    // Lines are dual points: {x : l . x = 0}.
    let flats = points
        .iter()
        .map(|line| {
            (0..points.len())
                .filter(|&i| {
                    let x = points[i].coords();
                    let l = line.coords();
                    let dot = (0..3).fold(field.zero(), |acc, j| field.add(&acc, &field.mul(&l[j], &x[j])));
                    field.is_zero(&dot)
                })
                .collect()
        })
        .collect();
    Matroid::from_indices(names, flats)
}

/// Looks up a named constructor: `fano`, `non_fano`, `u34`, `u2ext:N`,
/// `uniform:N`, `five_point`, `two_flat:A,B`, `four_lines`, `pg2:Q`.
/// Parenthesized arguments (`u2ext(5)`) are accepted too.
pub fn by_name(spec: &str) -> Result<Matroid> {
    let spec = spec.trim();
    let (name, args) = match spec.find([':', '(']) {
        Some(i) => (&spec[..i], spec[i + 1..].trim_end_matches(')')),
        None => (spec, ""),
    };
    let nums = || -> Result<Vec<usize>> {
        args.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Argument(format!("bad argument in `{spec}`"))))
            .collect()
    };
    let one = |lo: usize| -> Result<usize> {
        match nums()?.as_slice() {
            [x] if *x >= lo => Ok(*x),
            _ => Err(Error::Argument(format!("`{name}` needs one argument >= {lo}"))),
        }
    };
    match name.to_ascii_lowercase().replace('-', "_").as_str() {
        "fano" => Ok(fano()),
        "non_fano" | "nonfano" => Ok(non_fano()),
        "u34" => Ok(u34()),
        "uniform" => Ok(uniform(one(3)?)),
        "u2ext" => Ok(u2ext(one(3)?)),
        "five_point" => Ok(five_point()),
        "four_lines" => Ok(four_lines()),
        "two_flat" => match nums()?.as_slice() {
            [a, b] if *a >= 1 && *b >= 1 => Ok(two_flat(*a, *b)),
            _ => Err(Error::Argument("two_flat needs two arguments >= 1".into())),
        },
        "pg2" => pg2(one(2)? as u64),
        _ => Err(Error::Argument(format!("unknown matroid `{spec}`"))),
    }
}
