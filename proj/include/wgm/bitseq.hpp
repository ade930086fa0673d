#pragma once

#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace wgm {

// Fixed-width packed integer array. Entries are w bits each, stored LSB-first
// inside little-endian 64-bit words. No query directory: this is the mutable
// workhorse used for merge scratch and as backing storage elsewhere.
class PackedInts {
public:
    PackedInts() = default;
    PackedInts(size_t count, uint32_t width);

    uint64_t get(size_t idx) const;       // idx is 0-based
    void set(size_t idx, uint64_t value);

    size_t size() const { return count_; }
    uint32_t width() const { return width_; }
    size_t bits() const { return count_ * width_; }
    const std::vector<uint64_t>& words() const { return words_; }

    bool operator==(const PackedInts& o) const {
        return count_ == o.count_ && width_ == o.width_ && words_ == o.words_;
    }

private:
    friend class BitVec;
    friend class SymSeq;
    friend PackedInts read_bsq1(std::istream& in);
    friend void write_bsq1(std::ostream& out, const PackedInts& data);
    size_t count_ = 0;
    uint32_t width_ = 0;
    std::vector<uint64_t> words_;
};

PackedInts read_bsq1(std::istream& in);
void write_bsq1(std::ostream& out, const PackedInts& data);

// Immutable bitvector with rank/select support.
//
// The public interface is 1-based: bit(i) addresses s[i] for 1 <= i <= n,
// rank1(i) counts ones in s[1..i] (rank1(0) = 0), select1(j) returns the
// position of the j-th one with select1(0) = 0. Out-of-range arguments throw.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(const std::vector<bool>& bits);
    explicit BitVec(PackedInts bits);   // width must be 1
    static BitVec from_string(const std::string& zeros_and_ones);

    size_t size() const { return n_; }
    bool bit(size_t i) const;

    size_t rank1(size_t i) const;
    size_t rank0(size_t i) const { check_rank(i); return i - rank1(i); }
    size_t select1(size_t j) const;
    size_t select0(size_t j) const;

    size_t ones() const { return ones_; }
    size_t zeros() const { return n_ - ones_; }

    std::string to_string() const;
    bool operator==(const BitVec& o) const { return n_ == o.n_ && words_ == o.words_; }

    void serialize(std::ostream& out) const;
    static BitVec deserialize(std::istream& in);

private:
    void build_directory();
    void check_rank(size_t i) const;
    uint64_t word(size_t w) const { return w < words_.size() ? words_[w] : 0; }

    size_t n_ = 0;
    size_t ones_ = 0;
    std::vector<uint64_t> words_;
    // rank directory: absolute count per 512-bit superblock plus a 16-bit
    // in-superblock offset per word
    std::vector<uint64_t> super_;
    std::vector<uint16_t> blocks_;
};

// Immutable sequence over the alphabet {0,1,...,sigma} where 0 is the
// sentinel $ and 1..sigma are the regular symbols. rank/select are supported
// per symbol via blockwise counts; positions are 1-based as in BitVec.
class SymSeq {
public:
    SymSeq() = default;
    SymSeq(const std::vector<uint8_t>& symbols, uint32_t sigma);
    SymSeq(const std::string& symbols, uint32_t sigma);   // chars hold symbol values

    size_t size() const { return n_; }
    uint32_t sigma() const { return sigma_; }
    uint8_t sym(size_t i) const;                  // 1-based

    size_t rank(uint8_t c, size_t i) const;       // occurrences of c in s[1..i]
    size_t select(uint8_t c, size_t j) const;     // position of j-th c, select(c,0)=0
    size_t count(uint8_t c) const;                // total occurrences of c

    std::string to_string() const;                // raw symbol values as chars
    bool operator==(const SymSeq& o) const {
        return n_ == o.n_ && sigma_ == o.sigma_ && data_ == o.data_;
    }

    void serialize(std::ostream& out) const;
    static SymSeq deserialize(std::istream& in, uint32_t sigma);

private:
    void build_directory();
    void check_symbol(uint8_t c) const;

    size_t n_ = 0;
    uint32_t sigma_ = 0;
    PackedInts data_;
    // per-symbol cumulative counts at the end of every 64-entry block
    static constexpr size_t kBlock = 64;
    std::vector<std::vector<uint32_t>> cum_;
};

// BSQ1 block: magic "BSQ1", length u64, width u8, packed little-endian words.
void write_bsq1(std::ostream& out, const PackedInts& data);
PackedInts read_bsq1(std::istream& in);

void write_u8(std::ostream& out, uint8_t v);
void write_u16(std::ostream& out, uint16_t v);
void write_u32(std::ostream& out, uint32_t v);
void write_u64(std::ostream& out, uint64_t v);
uint8_t read_u8(std::istream& in);
uint16_t read_u16(std::istream& in);
uint32_t read_u32(std::istream& in);
uint64_t read_u64(std::istream& in);

uint32_t bits_for(uint64_t max_value);   // width needed to store values 0..max_value

}  // namespace wgm
