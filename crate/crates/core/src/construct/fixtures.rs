//! Reference adjacency matrices for the optimal `f = 1` networks on 8, 10
//! and 12 nodes (two complete halves plus two cross links per node).

pub(super) const OPT_F1_8: [&str; 8] = [
    "01110101", "10111010", "11011100", "11100011", "01100111", "10101011", "01011101", "10011110",
];

pub(super) const OPT_F1_10: [&str; 10] = [
    "0111100101",
    "1011101010",
    "1101110100",
    "1110111000",
    "1111000011",
    "0011001111",
    "0101010111",
    "1010011011",
    "0100111101",
    "1000111110",
];

pub(super) const OPT_F1_12: [&str; 12] = [
    "011111000101",
    "101111001010",
    "110111010100",
    "111011101000",
    "111101110000",
    "111110000011",
    "000110011111",
    "001010101111",
    "010100110111",
    "101000111011",
    "010001111101",
    "100001111110",
];
