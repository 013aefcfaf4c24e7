#include "mifs/system_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

#include "mifs/error.hpp"

namespace mifs {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

double number(std::string_view token, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v))
    throw ConfigError(line, "expected a decimal number, got '" + std::string(token) + "'");
  return v;
}

}  // namespace

MixedSystem parse_system_config(std::istream& in) {
  std::vector<Alphabet::Entry> letters;
  std::map<std::string, std::size_t, std::less<>> declared;
  std::map<std::string, std::pair<AffineMap, std::size_t>, std::less<>> maps;
  std::optional<double> a;
  bool have_dim = false;

  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto tok = tokenize(text);
    if (tok.empty()) continue;
    const auto key = tok[0];
    if (key == "dim") {
      if (tok.size() != 2) throw ConfigError(line, "usage: dim 2");
      if (tok[1] != "2") throw ConfigError(line, "only dimension 2 is supported");
      have_dim = true;
    } else if (key == "letter") {
      if (tok.size() != 3 || (tok[2] != "I" && tok[2] != "J")) throw ConfigError(line, "usage: letter <label> I|J");
      const std::string label(tok[1]);
      if (!Alphabet::valid_label(label)) throw ConfigError(line, "invalid letter label '" + label + "'");
      if (declared.contains(label)) throw ConfigError(line, "letter '" + label + "' declared twice");
      declared.emplace(label, line);
      letters.push_back({label, tok[2] == "I" ? LetterClass::I : LetterClass::J});
    } else if (key == "map") {
      if (tok.size() != 9 || tok[2] != "affine")
        throw ConfigError(line, "usage: map <label> affine <a11> <a12> <a21> <a22> <tx> <ty>");
      const std::string label(tok[1]);
      if (!declared.contains(label)) throw ConfigError(line, "map for undeclared letter '" + label + "'");
      if (maps.contains(label)) throw ConfigError(line, "second map for letter '" + label + "'");
      AffineMap f{{number(tok[3], line), number(tok[4], line), number(tok[5], line), number(tok[6], line)},
                  {number(tok[7], line), number(tok[8], line)}};
      maps.emplace(label, std::pair{f, line});
    } else if (key == "contraction_a") {
      if (tok.size() != 2) throw ConfigError(line, "usage: contraction_a <value>");
      if (a) throw ConfigError(line, "contraction_a given twice");
      a = number(tok[1], line);
      if (!(*a >= 0.0 && *a < 1.0)) throw ConfigError(line, "contraction_a must lie in [0, 1)");
    } else {
      throw ConfigError(line, "unknown directive '" + std::string(key) + "'");
    }
  }
  if (!have_dim) throw ConfigError(0, "missing 'dim 2'");
  if (letters.empty()) throw ConfigError(0, "no letters declared");
  if (!a) throw ConfigError(0, "missing contraction_a");
  std::vector<AffineMap> ordered;
  for (const auto& e : letters) {
    const auto it = maps.find(e.label);
    if (it == maps.end()) throw ConfigError(declared.at(e.label), "letter '" + e.label + "' has no map");
    ordered.push_back(it->second.first);
  }
  return MixedSystem(Alphabet::create(std::move(letters)), std::move(ordered), *a);
}

MixedSystem load_system_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open system config '" + path.string() + "'");
  return parse_system_config(in);
}

std::string format_system_config(const MixedSystem& sys) {
  std::ostringstream out;
  const Alphabet& alpha = *sys.alphabet();
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "dim 2\n";
  for (Letter l : alpha.letters()) out << "letter " << alpha.label(l) << ' ' << (alpha.in_I(l) ? 'I' : 'J') << '\n';
  for (Letter l : alpha.letters()) {
    const auto& f = sys.map(l);
    out << "map " << alpha.label(l) << " affine " << num(f.linear.a11) << ' ' << num(f.linear.a12) << ' '
        << num(f.linear.a21) << ' ' << num(f.linear.a22) << ' ' << num(f.translation.x) << ' '
        << num(f.translation.y) << '\n';
  }
  out << "contraction_a " << num(sys.contraction()) << '\n';
  return out.str();
}

}  // namespace mifs
