#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mifs {

enum class LetterClass : std::uint8_t { I, J };

/// Index of a letter inside its Alphabet. Labels live in the alphabet.
struct Letter {
  std::uint16_t index = 0;
  friend constexpr auto operator<=>(Letter, Letter) = default;
};

/// Partitioned alphabet I ∪ J. Letters are numbered in declaration order.
class Alphabet {
 public:
  struct Entry {
    std::string label;
    LetterClass cls;
  };

  /// Throws std::invalid_argument on duplicate or malformed labels, or an empty alphabet.
  static std::shared_ptr<const Alphabet> create(std::vector<Entry> entries);
  static std::shared_ptr<const Alphabet> create(const std::vector<std::string>& i_labels,
                                                const std::vector<std::string>& j_labels);

  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const Letter> letters() const noexcept { return all_; }
  std::span<const Letter> letters_I() const noexcept { return i_; }
  std::span<const Letter> letters_J() const noexcept { return j_; }

  LetterClass class_of(Letter l) const { return entries_.at(l.index).cls; }
  bool in_I(Letter l) const { return class_of(l) == LetterClass::I; }
  bool in_J(Letter l) const { return class_of(l) == LetterClass::J; }
  const std::string& label(Letter l) const { return entries_.at(l.index).label; }

  std::optional<Letter> find(std::string_view label) const;
  /// Throws UnknownLetter.
  Letter at(std::string_view label) const;

  static bool valid_label(std::string_view label) noexcept;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  explicit Alphabet(std::vector<Entry> entries);

  std::vector<Entry> entries_;
  std::vector<Letter> all_, i_, j_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

/// Element of Λ*(I ∪ J). The empty word is λ.
class FiniteWord {
 public:
  explicit FiniteWord(AlphabetPtr alphabet, std::vector<Letter> letters = {});
  FiniteWord(AlphabetPtr alphabet, std::initializer_list<std::string_view> labels);

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  /// 1-based, as in α = α₁α₂…α_n.
  Letter letter_at(std::size_t n) const;
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  friend bool operator==(const FiniteWord& a, const FiniteWord& b);

 private:
  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

enum class StreamClass : std::uint8_t { Sigma1, AllJTail };

struct PeriodicCycle {
  std::vector<Letter> cycle;
  friend bool operator==(const PeriodicCycle&, const PeriodicCycle&) = default;
};

/// Pseudo-random tail; letter n is a pure function of (seed, n).
struct SeededTail {
  std::uint64_t seed = 0;
  std::uint64_t offset = 0;  // tail position m draws from index m + offset
  std::optional<StreamClass> declared_class;
  std::vector<double> weights;     // per letter, indexed by Letter::index
  std::vector<double> cumulative;  // normalized prefix sums of weights
  friend bool operator==(const SeededTail& a, const SeededTail& b) {
    return a.seed == b.seed && a.offset == b.offset && a.declared_class == b.declared_class && a.weights == b.weights;
  }
};

/// Element of Λ(I ∪ J): a finite prefix followed by a periodic or seeded tail.
class AddressStream {
 public:
  using Tail = std::variant<PeriodicCycle, SeededTail>;

  /// prefix·cycle^∞; the cycle must be nonempty.
  static AddressStream periodic(FiniteWord prefix, const FiniteWord& cycle);
  /// Weights default to uniform over the letters admitted by `declared`.
  static AddressStream seeded(FiniteWord prefix, std::uint64_t seed,
                              std::optional<StreamClass> declared,
                              std::vector<double> weights = {});

  const AlphabetPtr& alphabet() const noexcept { return prefix_.alphabet(); }
  const FiniteWord& head() const noexcept { return prefix_; }
  const Tail& tail() const noexcept { return tail_; }
  bool is_periodic() const noexcept { return std::holds_alternative<PeriodicCycle>(tail_); }
  const PeriodicCycle* cycle() const noexcept { return std::get_if<PeriodicCycle>(&tail_); }
  const SeededTail* seeded_tail() const noexcept { return std::get_if<SeededTail>(&tail_); }

  /// 1-based; defined for every n ≥ 1.
  Letter letter_at(std::size_t n) const;

  /// The stream with `extra` inserted in front of the stored prefix.
  AddressStream with_prefix(const FiniteWord& extra) const;
  /// The stream α_{k+1}α_{k+2}… (drops k letters).
  AddressStream drop(std::size_t k) const;

  /// True when the tail contains only J-letters (decided exactly for cycles,
  /// by declaration for seeded tails).
  bool tail_is_j_only() const;

  friend bool operator==(const AddressStream& a, const AddressStream& b);

 private:
  AddressStream(FiniteWord prefix, Tail tail) : prefix_(std::move(prefix)), tail_(std::move(tail)) {}

  FiniteWord prefix_;
  Tail tail_;
};

FiniteWord concat(const FiniteWord& alpha, const FiniteWord& beta);
AddressStream concat(const FiniteWord& alpha, const AddressStream& beta);

/// [α]_m. Throws OutOfRange if m exceeds the length of a finite word.
FiniteWord prefix(const FiniteWord& alpha, std::size_t m);
FiniteWord prefix(const AddressStream& alpha, std::size_t m);

/// τ_i(α) = iα.
AddressStream shift_tau(Letter i, const AddressStream& alpha);

/// Number of positions holding I-letters.
std::size_t n_I_count(const FiniteWord& alpha);

/// Baire distance 2^{-k}, k the first index of disagreement.
struct BaireDistance {
  std::optional<std::size_t> first_disagreement;  // empty when the streams agree
  bool exact = true;  // false: agreement was only checked up to the depth cap
  double value() const;
};

BaireDistance baire_distance(const AddressStream& alpha, const AddressStream& beta,
                             std::size_t depth_cap = 64);

/// Σ₁(I,J): an address with infinitely many I-letters.
class Sigma1Word {
 public:
  /// Throws StructureError if the stream is not (decidably or declaredly) in Σ₁.
  explicit Sigma1Word(AddressStream stream);
  const AddressStream& stream() const noexcept { return stream_; }
  friend bool operator==(const Sigma1Word&, const Sigma1Word&) = default;

 private:
  AddressStream stream_;
};

struct Sigma0Block {
  AddressStream gamma;  // over J only
  FiniteWord beta;
  friend bool operator==(const Sigma0Block&, const Sigma0Block&) = default;
};

/// Σ₀(I,J): β₀γ₁β₁…γ_nβ_n with the endpoint constraints on the β parts.
class Sigma0Word {
 public:
  /// Validates the block constraints; throws StructureError.
  Sigma0Word(FiniteWord beta0, std::vector<Sigma0Block> blocks);

  const FiniteWord& beta0() const noexcept { return beta0_; }
  std::span<const Sigma0Block> blocks() const noexcept { return blocks_; }
  const AlphabetPtr& alphabet() const noexcept { return beta0_.alphabet(); }
  friend bool operator==(const Sigma0Word&, const Sigma0Word&) = default;

 private:
  FiniteWord beta0_;
  std::vector<Sigma0Block> blocks_;
};

using SigmaWord = std::variant<Sigma1Word, Sigma0Word>;

/// α = βγ with β = [α]_{n*} and γ ∈ Λ(J).
struct AllJTail {
  FiniteWord head;
  AddressStream tail;
};

using StreamClassification = std::variant<Sigma1Word, AllJTail>;

/// Throws Undecidable for a seeded stream without a declared class.
StreamClassification classify_sigma(const AddressStream& alpha);

/// The Σ₀ word β₀γ₁ with β₀ = head, γ₁ = tail.
Sigma0Word to_sigma0(const AllJTail& decomposition);

/// iσ, with a leading J-letter absorbed into γ₁ when β₀ = λ.
SigmaWord prepend(Letter i, const SigmaWord& sigma);

const AlphabetPtr& alphabet_of(const SigmaWord& sigma);

struct SigmaShape {
  std::size_t min_blocks = 1;
  std::size_t max_blocks = 3;
  double beta_mean_length = 2.0;  // geometric β lengths
  std::size_t min_cycle = 1;
  std::size_t max_cycle = 4;
};

enum class SigmaKind : std::uint8_t { Sigma0, Sigma1 };

SigmaKind kind_of(const SigmaWord& sigma);

/// Deterministic in (kind, seed, shape). Σ₁ results are uniform seeded streams;
/// Σ₀ results have periodic γ blocks.
SigmaWord random_sigma_word(const AlphabetPtr& alphabet, SigmaKind kind, std::uint64_t seed,
                            const SigmaShape& shape = {});

}  // namespace mifs
