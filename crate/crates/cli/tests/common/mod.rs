#![allow(dead_code)]

/// Valid specs with their canonical rendering.
pub const VALID_SPECS: [(&str, &str); 10] = [
    ("A:bpf(p)", "A:bpf(p)"),
    ("A:bf(p)^10; B:pf(q)^10", "A:bf(p)^10; B:pf(q)^10"),
    ("B:pf(q); A:bf(p)", "A:bf(p); B:pf(q)"),
    ("  a : DEP ( p )  ", "A:dep(p)"),
    ("A:gad(0.25)^3", "A:gad(0.25)^3"),
    ("A:id()", "A:id()"),
    ("A:ad(p);B:ad(p)", "A:ad(p); B:ad(p)"),
    ("B:bpf(1)", "B:bpf(1)"),
    ("A:pf(.5)^1", "A:pf(0.5)"),
    ("A:Bf(q)^100 ; B:BPF(p)^100", "A:bf(q)^100; B:bpf(p)^100"),
];

/// Invalid specs with the byte offset their error must point at.
pub const INVALID_SPECS: [(&str, usize); 10] = [
    ("", 0),
    ("A:xyz(p)", 2),
    ("A:bf(p", 6),
    ("C:bf(p)", 0),
    ("A:bpf(p); A:pf(q)", 10),
    ("A:bf()", 2),
    ("A:bf(1.5)", 5),
    ("A:bf(p)^0", 8),
    ("A:bf(p) B:pf(q)", 8),
    ("A:bf(p); B:pf(q); A:id()", 16),
];
