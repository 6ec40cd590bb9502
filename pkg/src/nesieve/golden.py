"""Frozen reference values used by the self-check command.

These are the known-good outputs the implementation must keep reproducing:
the candidate-conductor table for small degrees, the tail of the large cubic
run, and every explicit constant table.
"""

# Candidate (possibly norm-Euclidean) conductors f <= 1e4 per degree.
TABLE2 = {
    3: (7, 9, 13, 19, 31, 37, 43, 61, 67, 73, 103, 109, 127, 157,
        277, 439, 643, 997, 1597),
    5: (11, 25, 31, 41, 61, 71, 151, 311, 431),
    7: (29, 43, 49, 127, 239, 673, 701, 911),
    11: (23, 67, 89, 121, 331, 353, 419, 617),
    13: (53, 79, 131, 157, 169, 313, 443, 521, 937),
    17: (137, 289, 443, 1259, 2687),
    19: (191, 229, 361, 1103),
    23: (47, 139, 277, 461, 529, 599, 691, 967, 1013, 1289),
    29: (59, 233, 523, 841, 929, 2843, 3191),
}

# Witnesses of the last ten conductors below 1e10 (degree 3, cubic engine).
WITNESS_BLOCK = (
    "f=9999999673, q1=5, q2=7, r=17",
    "f=9999999679, q1=2, q2=3, r=19",
    "f=9999999703, q1=2, q2=3, r=11",
    "f=9999999727, q1=7, q2=11, r=19",
    "f=9999999769, q1=3, q2=5, r=37",
    "f=9999999781, q1=2, q2=5, r=7",
    "f=9999999787, q1=3, q2=5, r=29",
    "f=9999999817, q1=2, q2=3, r=13",
    "f=9999999943, q1=5, q2=7, r=19",
    "f=9999999967, q1=5, q2=7, r=11",
)

# Short-character-sum constants C(r), 4 decimals, rounded up.
BURGESS_C = {
    2: "10.0366", 3: "4.9539", 4: "3.6493", 5: "3.0356", 6: "2.6765",
    7: "2.4400", 8: "2.2721", 9: "2.1467", 10: "2.0492", 11: "1.9712",
    12: "1.9073", 13: "1.8540", 14: "1.8088", 15: "1.7700",
}

# Search-radius constants: D1 assumes q1 >= 2, D2 assumes q1 >= 101.
D1 = {
    2: "89.1550", 3: "43.1104", 4: "31.9985", 5: "26.9751", 6: "24.1129",
    7: "22.2635", 8: "20.9692", 9: "20.0133", 10: "19.2768", 11: "18.6920",
    12: "18.2160", 13: "17.8211", 14: "17.4877", 15: "17.2028",
}
D2 = {
    2: "13.5958", 3: "6.6415", 4: "5.0420", 5: "4.3220", 6: "3.9103",
    7: "3.6430", 8: "3.4550", 9: "3.3154", 10: "3.2075", 11: "3.1215",
    12: "3.0513", 13: "2.9929", 14: "2.9434", 15: "2.9011",
}

# Aggregated failure-inequality constants E(k) = 18.9 * D2(k)^k.
E = {
    2: "3493.6", 3: "5536.9", 4: "12215", 5: "28503", 6: "67566",
    7: "160950", 8: "383750",
}

# Published conductor-bound exponents: C_ell = 10^e for odd primes ell < 100.
CL_EXPONENTS = {
    3: 70, 5: 78, 7: 82, 11: 88, 13: 89, 17: 92, 19: 94, 23: 96, 29: 98,
    31: 99, 37: 101, 41: 102, 43: 102, 47: 103, 53: 104, 59: 105, 61: 106,
    67: 107, 71: 107, 73: 108, 79: 108, 83: 109, 89: 109, 97: 110,
}
