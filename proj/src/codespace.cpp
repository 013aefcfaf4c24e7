#include "mifs/codespace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mifs/error.hpp"
#include "mifs/random.hpp"

namespace mifs {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<Entry> entries) : entries_(std::move(entries)) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const Letter l{static_cast<std::uint16_t>(k)};
    all_.push_back(l);
    (entries_[k].cls == LetterClass::I ? i_ : j_).push_back(l);
  }
}

bool Alphabet::valid_label(std::string_view label) noexcept {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](char c) {
    return c == '.' || c == '(' || c == ')' || c == ':' || c == '^' || c == '#' || c == ',' ||
           static_cast<unsigned char>(c) <= ' ';
  });
}

std::shared_ptr<const Alphabet> Alphabet::create(std::vector<Entry> entries) {
  if (entries.empty()) throw std::invalid_argument("alphabet must contain at least one letter");
  if (entries.size() > 0xffff) throw std::invalid_argument("alphabet too large");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!valid_label(entries[k].label))
      throw std::invalid_argument("invalid letter label '" + entries[k].label + "'");
    for (std::size_t m = 0; m < k; ++m)
      if (entries[m].label == entries[k].label)
        throw std::invalid_argument("duplicate letter label '" + entries[k].label + "'");
  }
  return std::shared_ptr<const Alphabet>(new Alphabet(std::move(entries)));
}

std::shared_ptr<const Alphabet> Alphabet::create(const std::vector<std::string>& i_labels,
                                                 const std::vector<std::string>& j_labels) {
  std::vector<Entry> entries;
  for (const auto& l : i_labels) entries.push_back({l, LetterClass::I});
  for (const auto& l : j_labels) entries.push_back({l, LetterClass::J});
  return create(std::move(entries));
}

std::optional<Letter> Alphabet::find(std::string_view label) const {
  for (std::size_t k = 0; k < entries_.size(); ++k)
    if (entries_[k].label == label) return Letter{static_cast<std::uint16_t>(k)};
  return std::nullopt;
}

Letter Alphabet::at(std::string_view label) const {
  if (auto l = find(label)) return *l;
  throw UnknownLetter(std::string(label));
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    if (a.entries_[k].label != b.entries_[k].label || a.entries_[k].cls != b.entries_[k].cls)
      return false;
  return true;
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (a == b) return true;
  return a && b && *a == *b;
}

namespace {

void require_same(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (!same_alphabet(a, b)) throw AlphabetMismatch();
}

bool any_I(const Alphabet& alphabet, std::span<const Letter> letters) {
  return std::any_of(letters.begin(), letters.end(), [&](Letter l) { return alphabet.in_I(l); });
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteWord

FiniteWord::FiniteWord(AlphabetPtr alphabet, std::vector<Letter> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
  if (!alphabet_) throw std::invalid_argument("word without alphabet");
  for (Letter l : letters_)
    if (l.index >= alphabet_->size()) throw std::invalid_argument("letter outside alphabet");
}

FiniteWord::FiniteWord(AlphabetPtr alphabet, std::initializer_list<std::string_view> labels)
    : alphabet_(std::move(alphabet)) {
  if (!alphabet_) throw std::invalid_argument("word without alphabet");
  letters_.reserve(labels.size());
  for (auto label : labels) letters_.push_back(alphabet_->at(label));
}

Letter FiniteWord::letter_at(std::size_t n) const {
  if (n == 0 || n > letters_.size())
    throw OutOfRange("letter index " + std::to_string(n) + " outside word of length " +
                     std::to_string(letters_.size()));
  return letters_[n - 1];
}

bool operator==(const FiniteWord& a, const FiniteWord& b) {
  return same_alphabet(a.alphabet_, b.alphabet_) && a.letters_ == b.letters_;
}

// ---------------------------------------------------------------------------
// AddressStream

AddressStream AddressStream::periodic(FiniteWord prefix, const FiniteWord& cycle) {
  require_same(prefix.alphabet(), cycle.alphabet());
  if (cycle.empty()) throw std::invalid_argument("periodic tail needs a nonempty cycle");
  return AddressStream(std::move(prefix),
                       PeriodicCycle{{cycle.letters().begin(), cycle.letters().end()}});
}

AddressStream AddressStream::seeded(FiniteWord prefix, std::uint64_t seed,
                                    std::optional<StreamClass> declared,
                                    std::vector<double> weights) {
  const Alphabet& alphabet = *prefix.alphabet();
  if (weights.empty()) {
    weights.assign(alphabet.size(), 0.0);
    for (Letter l : alphabet.letters())
      if (declared != StreamClass::AllJTail || alphabet.in_J(l)) weights[l.index] = 1.0;
  }
  if (weights.size() != alphabet.size())
    throw std::invalid_argument("seeded stream needs one weight per letter");
  double total = 0.0, on_i = 0.0;
  for (Letter l : alphabet.letters()) {
    const double w = weights[l.index];
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("letter weights must be nonnegative");
    total += w;
    if (alphabet.in_I(l)) on_i += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("letter weights sum to zero");
  if (declared == StreamClass::AllJTail && on_i > 0.0)
    throw std::invalid_argument("an all-J seeded tail cannot weight I-letters");
  if (declared == StreamClass::Sigma1 && !(on_i > 0.0))
    throw std::invalid_argument("a Sigma1 seeded stream needs a positive weight on some I-letter");

  SeededTail tail;
  tail.seed = seed;
  tail.declared_class = declared;
  tail.cumulative.resize(weights.size());
  double run = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    run += weights[k];
    tail.cumulative[k] = run / total;
  }
  // Letters with zero weight must never be drawn, including at u close to 1.
  for (std::size_t k = weights.size(); k-- > 0;) {
    if (weights[k] > 0.0) {
      for (std::size_t m = k; m < weights.size(); ++m) tail.cumulative[m] = 1.0;
      break;
    }
  }
  tail.weights = std::move(weights);
  return AddressStream(std::move(prefix), std::move(tail));
}

Letter AddressStream::letter_at(std::size_t n) const {
  if (n == 0) throw OutOfRange("stream letters are indexed from 1");
  const std::size_t head_len = prefix_.length();
  if (n <= head_len) return prefix_.letters()[n - 1];
  const std::size_t m = n - head_len;  // 1-based tail position
  if (const auto* c = std::get_if<PeriodicCycle>(&tail_)) return c->cycle[(m - 1) % c->cycle.size()];
  const auto& s = std::get<SeededTail>(tail_);
  const double u = unit_interval(derive_seed(s.seed, m + s.offset));
  const auto it = std::upper_bound(s.cumulative.begin(), s.cumulative.end(), u);
  return Letter{static_cast<std::uint16_t>(it - s.cumulative.begin())};
}

AddressStream AddressStream::with_prefix(const FiniteWord& extra) const {
  return AddressStream(concat(extra, prefix_), tail_);
}

AddressStream AddressStream::drop(std::size_t k) const {
  const auto head = prefix_.letters();
  if (k <= head.size())
    return AddressStream(FiniteWord(alphabet(), {head.begin() + static_cast<std::ptrdiff_t>(k), head.end()}), tail_);
  const std::size_t into_tail = k - head.size();
  if (const auto* c = std::get_if<PeriodicCycle>(&tail_)) {
    PeriodicCycle rotated = *c;
    std::rotate(rotated.cycle.begin(),
                rotated.cycle.begin() + static_cast<std::ptrdiff_t>(into_tail % c->cycle.size()),
                rotated.cycle.end());
    return AddressStream(FiniteWord(alphabet()), std::move(rotated));
  }
  SeededTail s = std::get<SeededTail>(tail_);
  s.offset += into_tail;
  return AddressStream(FiniteWord(alphabet()), std::move(s));
}

bool AddressStream::tail_is_j_only() const {
  const Alphabet& a = *alphabet();
  if (const auto* c = std::get_if<PeriodicCycle>(&tail_)) return !any_I(a, c->cycle);
  const auto& s = std::get<SeededTail>(tail_);
  for (Letter l : a.letters_I())
    if (s.weights[l.index] > 0.0) return false;
  return true;
}

bool operator==(const AddressStream& a, const AddressStream& b) {
  return a.prefix_ == b.prefix_ && a.tail_ == b.tail_;
}

// ---------------------------------------------------------------------------
// Word operations

FiniteWord concat(const FiniteWord& alpha, const FiniteWord& beta) {
  require_same(alpha.alphabet(), beta.alphabet());
  std::vector<Letter> letters(alpha.letters().begin(), alpha.letters().end());
  letters.insert(letters.end(), beta.letters().begin(), beta.letters().end());
  return FiniteWord(alpha.alphabet(), std::move(letters));
}

AddressStream concat(const FiniteWord& alpha, const AddressStream& beta) {
  require_same(alpha.alphabet(), beta.alphabet());
  return beta.with_prefix(alpha);
}

FiniteWord prefix(const FiniteWord& alpha, std::size_t m) {
  if (m > alpha.length())
    throw OutOfRange("prefix length " + std::to_string(m) + " exceeds word length " +
                     std::to_string(alpha.length()));
  return FiniteWord(alpha.alphabet(), {alpha.letters().begin(), alpha.letters().begin() + static_cast<std::ptrdiff_t>(m)});
}

FiniteWord prefix(const AddressStream& alpha, std::size_t m) {
  std::vector<Letter> letters;
  letters.reserve(m);
  for (std::size_t n = 1; n <= m; ++n) letters.push_back(alpha.letter_at(n));
  return FiniteWord(alpha.alphabet(), std::move(letters));
}

AddressStream shift_tau(Letter i, const AddressStream& alpha) {
  return alpha.with_prefix(FiniteWord(alpha.alphabet(), {i}));
}

std::size_t n_I_count(const FiniteWord& alpha) {
  const Alphabet& a = *alpha.alphabet();
  return static_cast<std::size_t>(
      std::count_if(alpha.letters().begin(), alpha.letters().end(), [&](Letter l) { return a.in_I(l); }));
}

double BaireDistance::value() const {
  if (!first_disagreement) return 0.0;
  return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(*first_disagreement, 1100)));
}

BaireDistance baire_distance(const AddressStream& alpha, const AddressStream& beta,
                             std::size_t depth_cap) {
  require_same(alpha.alphabet(), beta.alphabet());
  if (depth_cap == 0) throw std::invalid_argument("depth_cap must be at least 1");
  if (alpha == beta) return {};

  std::size_t horizon = depth_cap;
  bool exact = false;
  if (alpha.is_periodic() && beta.is_periodic()) {
    // Past both prefixes the letter pairs repeat with period lcm of the cycle lengths.
    horizon = std::max(alpha.head().length(), beta.head().length()) +
              std::lcm(alpha.cycle()->cycle.size(), beta.cycle()->cycle.size());
    exact = true;
  }
  for (std::size_t k = 1; k <= horizon; ++k)
    if (alpha.letter_at(k) != beta.letter_at(k)) return {k, true};
  return {std::nullopt, exact};
}

// ---------------------------------------------------------------------------
// Σ words

Sigma1Word::Sigma1Word(AddressStream stream) : stream_(std::move(stream)) {
  const Alphabet& a = *stream_.alphabet();
  if (const auto* c = stream_.cycle()) {
    if (!any_I(a, c->cycle)) throw StructureError("periodic stream has no I-letter in its cycle");
  } else if (stream_.seeded_tail()->declared_class != StreamClass::Sigma1) {
    throw StructureError("seeded stream is not declared Sigma1");
  }
}

Sigma0Word::Sigma0Word(FiniteWord beta0, std::vector<Sigma0Block> blocks)
    : beta0_(std::move(beta0)), blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw StructureError("a Sigma0 word needs at least one infinite J-block");
  const Alphabet& a = *beta0_.alphabet();
  if (!beta0_.empty() && !a.in_I(beta0_.back()))
    throw StructureError("beta_0 must be empty or end with an I-letter");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const auto& [gamma, beta] = blocks_[k];
    if (!same_alphabet(gamma.alphabet(), beta0_.alphabet()) ||
        !same_alphabet(beta.alphabet(), beta0_.alphabet()))
      throw AlphabetMismatch();
    if (any_I(a, gamma.head().letters()) || !gamma.tail_is_j_only())
      throw StructureError("gamma_" + std::to_string(k + 1) + " must contain only J-letters");
    const bool last = k + 1 == blocks_.size();
    if (last) {
      if (!beta.empty() && !a.in_I(beta.front()))
        throw StructureError("the final beta must be empty or start with an I-letter");
    } else if (beta.empty() || !a.in_I(beta.front()) || !a.in_I(beta.back())) {
      throw StructureError("interior beta_" + std::to_string(k + 1) +
                           " must start and end with I-letters");
    }
  }
}

StreamClassification classify_sigma(const AddressStream& alpha) {
  const Alphabet& a = *alpha.alphabet();
  bool sigma1 = false;
  if (const auto* c = alpha.cycle()) {
    sigma1 = any_I(a, c->cycle);
  } else {
    const auto& s = *alpha.seeded_tail();
    if (s.declared_class == StreamClass::Sigma1) {
      sigma1 = true;
    } else if (!alpha.tail_is_j_only()) {
      throw Undecidable("seeded stream without a declared Sigma class");
    }
  }
  if (sigma1) return Sigma1Word(alpha);

  const auto head = alpha.head().letters();
  std::size_t n_star = 0;
  for (std::size_t k = head.size(); k > 0; --k)
    if (a.in_I(head[k - 1])) {
      n_star = k;
      break;
    }
  return AllJTail{prefix(alpha.head(), n_star), alpha.drop(n_star)};
}

Sigma0Word to_sigma0(const AllJTail& decomposition) {
  return Sigma0Word(decomposition.head,
                    {Sigma0Block{decomposition.tail, FiniteWord(decomposition.head.alphabet())}});
}

SigmaWord prepend(Letter i, const SigmaWord& sigma) {
  if (const auto* s1 = std::get_if<Sigma1Word>(&sigma)) return Sigma1Word(shift_tau(i, s1->stream()));
  const auto& s0 = std::get<Sigma0Word>(sigma);
  const AlphabetPtr& alphabet = s0.alphabet();
  const FiniteWord head(alphabet, {i});
  if (alphabet->in_I(i) || !s0.beta0().empty())
    return Sigma0Word(concat(head, s0.beta0()), {s0.blocks().begin(), s0.blocks().end()});
  std::vector<Sigma0Block> blocks(s0.blocks().begin(), s0.blocks().end());
  blocks.front().gamma = blocks.front().gamma.with_prefix(head);
  return Sigma0Word(s0.beta0(), std::move(blocks));
}

const AlphabetPtr& alphabet_of(const SigmaWord& sigma) {
  if (const auto* s1 = std::get_if<Sigma1Word>(&sigma)) return s1->stream().alphabet();
  return std::get<Sigma0Word>(sigma).alphabet();
}

SigmaKind kind_of(const SigmaWord& sigma) {
  return std::holds_alternative<Sigma1Word>(sigma) ? SigmaKind::Sigma1 : SigmaKind::Sigma0;
}

SigmaWord random_sigma_word(const AlphabetPtr& alphabet, SigmaKind kind, std::uint64_t seed,
                            const SigmaShape& shape) {
  if (kind == SigmaKind::Sigma1)
    return Sigma1Word(AddressStream::seeded(FiniteWord(alphabet), seed, StreamClass::Sigma1));

  const auto I = alphabet->letters_I();
  const auto J = alphabet->letters_J();
  const auto all = alphabet->letters();
  if (J.empty()) throw StructureError("Sigma0 words need at least one J-letter");
  if (shape.min_blocks == 0 || shape.min_blocks > shape.max_blocks || shape.min_cycle == 0 ||
      shape.min_cycle > shape.max_cycle || !(shape.beta_mean_length >= 0.0))
    throw std::invalid_argument("inconsistent Sigma0 shape parameters");

  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::span<const Letter> from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
  };
  std::geometric_distribution<std::size_t> length(1.0 / (1.0 + shape.beta_mean_length));
  auto random_beta = [&](std::size_t len, bool i_front, bool i_back) {
    std::vector<Letter> letters(len);
    for (auto& l : letters) l = pick(all);
    if (len > 0 && i_front) letters.front() = pick(I);
    if (len > 0 && i_back) letters.back() = pick(I);
    return FiniteWord(alphabet, std::move(letters));
  };

  std::size_t n_blocks =
      std::uniform_int_distribution<std::size_t>(shape.min_blocks, shape.max_blocks)(rng);
  if (I.empty()) n_blocks = 1;  // interior β parts need I-letters

  FiniteWord beta0 = I.empty() ? FiniteWord(alphabet) : random_beta(length(rng), false, true);
  std::vector<Sigma0Block> blocks;
  for (std::size_t k = 0; k < n_blocks; ++k) {
    const std::size_t cycle_len =
        std::uniform_int_distribution<std::size_t>(shape.min_cycle, shape.max_cycle)(rng);
    std::vector<Letter> cycle(cycle_len);
    for (auto& l : cycle) l = pick(J);
    AddressStream gamma = AddressStream::periodic(FiniteWord(alphabet), FiniteWord(alphabet, std::move(cycle)));
    const bool last = k + 1 == n_blocks;
    FiniteWord beta = I.empty()  ? FiniteWord(alphabet)
                      : last     ? random_beta(length(rng), true, false)
                                 : random_beta(1 + length(rng), true, true);
    blocks.push_back({std::move(gamma), std::move(beta)});
  }
  return Sigma0Word(std::move(beta0), std::move(blocks));
}

}  // namespace mifs
