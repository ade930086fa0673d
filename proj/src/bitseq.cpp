#include "wgm/bitseq.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace wgm {

uint32_t bits_for(uint64_t max_value) {
    uint32_t w = 1;
    while (max_value >> w) ++w;
    return w;
}

// ---------------------------------------------------------------------------
// PackedInts

PackedInts::PackedInts(size_t count, uint32_t width) : count_(count), width_(width) {
    if (width == 0 || width > 64) throw std::invalid_argument("PackedInts: bad width");
    words_.assign((count * width + 63) / 64, 0);
}

uint64_t PackedInts::get(size_t idx) const {
    size_t bitpos = idx * width_;
    size_t w = bitpos >> 6, off = bitpos & 63;
    uint64_t mask = width_ == 64 ? ~0ull : (1ull << width_) - 1;
    uint64_t v = words_[w] >> off;
    if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
    return v & mask;
}

void PackedInts::set(size_t idx, uint64_t value) {
    size_t bitpos = idx * width_;
    size_t w = bitpos >> 6, off = bitpos & 63;
    uint64_t mask = width_ == 64 ? ~0ull : (1ull << width_) - 1;
    value &= mask;
    words_[w] = (words_[w] & ~(mask << off)) | (value << off);
    if (off + width_ > 64) {
        size_t spill = off + width_ - 64;
        uint64_t hmask = (1ull << spill) - 1;
        words_[w + 1] = (words_[w + 1] & ~hmask) | (value >> (64 - off));
    }
}

// ---------------------------------------------------------------------------
// BitVec

BitVec::BitVec(const std::vector<bool>& bits) {
    n_ = bits.size();
    words_.assign((n_ + 63) / 64, 0);
    for (size_t i = 0; i < n_; ++i)
        if (bits[i]) words_[i >> 6] |= 1ull << (i & 63);
    build_directory();
}

BitVec::BitVec(PackedInts bits) {
    if (bits.width() != 1) throw std::invalid_argument("BitVec: width must be 1");
    n_ = bits.size();
    words_ = std::move(bits.words_);
    build_directory();
}

BitVec BitVec::from_string(const std::string& s) {
    std::vector<bool> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c == '0') bits.push_back(false);
        else if (c == '1') bits.push_back(true);
        else throw std::invalid_argument("BitVec::from_string: expected 0/1");
    }
    return BitVec(bits);
}

void BitVec::build_directory() {
    size_t nwords = words_.size();
    // mask stray bits in the last word so popcounts stay honest
    if (n_ & 63) words_.back() &= (1ull << (n_ & 63)) - 1;
    super_.assign((nwords + 7) / 8, 0);   // one entry per started superblock
    blocks_.assign(nwords, 0);
    uint64_t total = 0, within = 0;
    for (size_t w = 0; w < nwords; ++w) {
        if ((w & 7) == 0) {
            super_[w >> 3] = total;
            within = 0;
        }
        blocks_[w] = static_cast<uint16_t>(within);
        uint64_t pc = std::popcount(words_[w]);
        within += pc;
        total += pc;
    }
    ones_ = total;
}

void BitVec::check_rank(size_t i) const {
    if (i > n_) throw std::out_of_range("BitVec::rank: position out of range");
}

bool BitVec::bit(size_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("BitVec::bit: position out of range");
    size_t z = i - 1;
    return (words_[z >> 6] >> (z & 63)) & 1;
}

size_t BitVec::rank1(size_t i) const {
    check_rank(i);
    if (i == 0) return 0;
    size_t z = i - 1;  // rank over s[1..i] = bits [0..z] 0-based
    size_t w = z >> 6;
    uint64_t partial = words_[w] & (~0ull >> (63 - (z & 63)));
    return super_[w >> 3] + blocks_[w] + std::popcount(partial);
}

size_t BitVec::select1(size_t j) const {
    if (j == 0) return 0;
    if (j > ones_) throw std::out_of_range("BitVec::select1: rank out of range");
    // superblock, then word, then bit
    size_t lo = 0, hi = super_.size() - 1;
    while (lo < hi) {  // last superblock with super_ < j
        size_t mid = (lo + hi + 1) / 2;
        if (super_[mid] < j) lo = mid; else hi = mid - 1;
    }
    size_t need = j - super_[lo];
    size_t w = lo * 8;
    size_t wend = std::min(words_.size(), w + 8);
    while (w + 1 < wend && blocks_[w + 1] < need) ++w;
    need -= blocks_[w];
    uint64_t word = words_[w];
    for (size_t b = 0;; ++b) {
        if ((word >> b) & 1) {
            if (--need == 0) return w * 64 + b + 1;
        }
    }
}

size_t BitVec::select0(size_t j) const {
    if (j == 0) return 0;
    if (j > zeros()) throw std::out_of_range("BitVec::select0: rank out of range");
    auto zeros_before_super = [&](size_t s) { return std::min(s * 512, n_) - super_[s]; };
    size_t lo = 0, hi = super_.size() - 1;
    while (lo < hi) {  // last superblock with zero-count < j
        size_t mid = (lo + hi + 1) / 2;
        if (zeros_before_super(mid) < j) lo = mid; else hi = mid - 1;
    }
    size_t need = j - zeros_before_super(lo);
    size_t w = lo * 8;
    size_t wend = std::min(words_.size(), w + 8);
    while (w + 1 < wend && (w + 1 - lo * 8) * 64 - blocks_[w + 1] < need) ++w;
    need -= (w - lo * 8) * 64 - blocks_[w];
    uint64_t word = ~words_[w];
    for (size_t b = 0;; ++b) {
        if ((word >> b) & 1) {
            if (--need == 0) return w * 64 + b + 1;
        }
    }
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; ++i)
        if ((words_[i >> 6] >> (i & 63)) & 1) s[i] = '1';
    return s;
}

void BitVec::serialize(std::ostream& out) const {
    PackedInts p(n_, 1);
    p.words_ = words_;
    p.words_.resize((n_ + 63) / 64);
    write_bsq1(out, p);
}

BitVec BitVec::deserialize(std::istream& in) {
    PackedInts p = read_bsq1(in);
    if (p.width() != 1) throw std::runtime_error("BitVec: BSQ1 block width is not 1");
    return BitVec(std::move(p));
}

// ---------------------------------------------------------------------------
// SymSeq

SymSeq::SymSeq(const std::vector<uint8_t>& symbols, uint32_t sigma) : sigma_(sigma) {
    n_ = symbols.size();
    data_ = PackedInts(n_, bits_for(sigma));
    for (size_t i = 0; i < n_; ++i) {
        if (symbols[i] > sigma) throw std::invalid_argument("SymSeq: symbol out of alphabet");
        data_.set(i, symbols[i]);
    }
    build_directory();
}

SymSeq::SymSeq(const std::string& symbols, uint32_t sigma)
    : SymSeq(std::vector<uint8_t>(symbols.begin(), symbols.end()), sigma) {}

void SymSeq::build_directory() {
    size_t nblocks = n_ / kBlock + 1;
    cum_.assign(sigma_ + 1, std::vector<uint32_t>(nblocks, 0));
    std::vector<uint32_t> running(sigma_ + 1, 0);
    for (size_t i = 0; i < n_; ++i) {
        ++running[data_.get(i)];
        if ((i + 1) % kBlock == 0)
            for (uint32_t c = 0; c <= sigma_; ++c) cum_[c][(i + 1) / kBlock] = running[c];
    }
}

uint8_t SymSeq::sym(size_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("SymSeq::sym: position out of range");
    return static_cast<uint8_t>(data_.get(i - 1));
}

void SymSeq::check_symbol(uint8_t c) const {
    if (c > sigma_) throw std::out_of_range("SymSeq: symbol out of alphabet");
}

size_t SymSeq::rank(uint8_t c, size_t i) const {
    check_symbol(c);
    if (i > n_) throw std::out_of_range("SymSeq::rank: position out of range");
    size_t block = i / kBlock;
    size_t r = cum_[c][block];
    for (size_t p = block * kBlock; p < i; ++p)
        if (data_.get(p) == c) ++r;
    return r;
}

size_t SymSeq::count(uint8_t c) const { return rank(c, n_); }

size_t SymSeq::select(uint8_t c, size_t j) const {
    check_symbol(c);
    if (j == 0) return 0;
    if (j > count(c)) throw std::out_of_range("SymSeq::select: rank out of range");
    const auto& cc = cum_[c];
    size_t lo = 0, hi = cc.size() - 1;
    while (lo < hi) {  // last block boundary with cum < j
        size_t mid = (lo + hi + 1) / 2;
        if (cc[mid] < j) lo = mid; else hi = mid - 1;
    }
    size_t need = j - cc[lo];
    for (size_t p = lo * kBlock;; ++p) {
        if (data_.get(p) == c && --need == 0) return p + 1;
    }
}

std::string SymSeq::to_string() const {
    std::string s(n_, 0);
    for (size_t i = 0; i < n_; ++i) s[i] = static_cast<char>(data_.get(i));
    return s;
}

void SymSeq::serialize(std::ostream& out) const { write_bsq1(out, data_); }

SymSeq SymSeq::deserialize(std::istream& in, uint32_t sigma) {
    PackedInts p = read_bsq1(in);
    if (p.width() != bits_for(sigma))
        throw std::runtime_error("SymSeq: BSQ1 width does not match alphabet");
    SymSeq s;
    s.n_ = p.size();
    s.sigma_ = sigma;
    s.data_ = std::move(p);
    for (size_t i = 0; i < s.n_; ++i)
        if (s.data_.get(i) > sigma) throw std::runtime_error("SymSeq: symbol out of alphabet");
    s.build_directory();
    return s;
}

// ---------------------------------------------------------------------------
// raw little-endian IO

void write_u8(std::ostream& out, uint8_t v) { out.put(static_cast<char>(v)); }
void write_u16(std::ostream& out, uint16_t v) {
    for (int i = 0; i < 2; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
void write_u32(std::ostream& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
void write_u64(std::ostream& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

static uint64_t read_le(std::istream& in, int bytes) {
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        int c = in.get();
        if (c == EOF) throw std::runtime_error("unexpected end of file");
        v |= static_cast<uint64_t>(c & 0xff) << (8 * i);
    }
    return v;
}

uint8_t read_u8(std::istream& in) { return static_cast<uint8_t>(read_le(in, 1)); }
uint16_t read_u16(std::istream& in) { return static_cast<uint16_t>(read_le(in, 2)); }
uint32_t read_u32(std::istream& in) { return static_cast<uint32_t>(read_le(in, 4)); }
uint64_t read_u64(std::istream& in) { return read_le(in, 8); }

void write_bsq1(std::ostream& out, const PackedInts& data) {
    out.write("BSQ1", 4);
    write_u64(out, data.size());
    write_u8(out, static_cast<uint8_t>(data.width()));
    for (uint64_t w : data.words()) write_u64(out, w);
}

PackedInts read_bsq1(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::string(magic, 4) != "BSQ1")
        throw std::runtime_error("bad BSQ1 magic");
    uint64_t count = read_u64(in);
    uint8_t width = read_u8(in);
    PackedInts p(count, width);
    for (auto& w : p.words_) w = read_u64(in);
    return p;
}

}  // namespace wgm
