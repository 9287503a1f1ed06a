#include "lorder/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lorder {

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverse()) return false;
  }
  return true;
}

Word invert(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back(it->inverse());
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + lo, r.begin() + hi);
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(const Word& w, int n) {
  Word base = n >= 0 ? w : invert(w);
  int k = n >= 0 ? n : -n;
  Word out;
  out.reserve(base.size() * k);
  for (int i = 0; i < k; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

namespace {

int generator_index(const std::string& alphabet, char lower) {
  auto pos = alphabet.find(lower);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

Word parse_word_at(const std::string& alphabet, std::string_view s, int line, int col0) {
  if (s == "1") return {};
  Word w;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool inverted = std::isupper(static_cast<unsigned char>(c)) != 0;
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    int gen = generator_index(alphabet, lower);
    if (gen < 0) {
      throw ParseError("letter '" + std::string(1, c) + "' outside alphabet", line,
                       col0 + static_cast<int>(i));
    }
    w.push_back(Letter::make(gen, inverted));
  }
  return w;
}

}  // namespace

Presentation Presentation::parse(const std::string& text) {
  Presentation p;
  bool saw_gens = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    auto fail = [&](const std::string& msg, std::size_t col) {
      throw ParseError(msg, lineno, static_cast<int>(col) + 1);
    };
    if (line.compare(start, 5, "gens:") == 0) {
      if (saw_gens) fail("duplicate gens: line", start);
      saw_gens = true;
      std::istringstream gs(line.substr(start + 5));
      std::string tok;
      while (gs >> tok) {
        if (tok.size() != 1 || !std::islower(static_cast<unsigned char>(tok[0]))) {
          fail("generator name must be a single lowercase letter: '" + tok + "'", start);
        }
        if (p.alphabet.find(tok[0]) != std::string::npos) {
          fail("duplicate generator '" + tok + "'", start);
        }
        p.alphabet.push_back(tok[0]);
      }
      if (p.alphabet.empty()) fail("gens: line lists no generators", start);
    } else if (line.compare(start, 4, "rel:") == 0) {
      if (!saw_gens) fail("rel: before gens:", start);
      std::size_t ws = line.find_first_not_of(" \t", start + 4);
      if (ws == std::string::npos) fail("empty rel: line", start);
      std::size_t we = line.find_last_not_of(" \t") + 1;
      Word r = parse_word_at(p.alphabet, std::string_view(line).substr(ws, we - ws), lineno,
                             static_cast<int>(ws) + 1);
      r = cyclic_reduce(r);
      if (!r.empty()) p.relators.push_back(std::move(r));
    } else {
      fail("unrecognized line (expected gens:, rel:, or # comment)", start);
    }
  }
  if (!saw_gens) throw ParseError("missing gens: line", lineno, 1);
  return p;
}

Presentation Presentation::make(std::string alphabet, const std::vector<std::string>& relators) {
  std::string text = "gens:";
  for (char c : alphabet) {
    text.push_back(' ');
    text.push_back(c);
  }
  text.push_back('\n');
  for (const auto& r : relators) text += "rel: " + r + "\n";
  return parse(text);
}

Word Presentation::parse_word(std::string_view s) const {
  return parse_word_at(alphabet, s, 0, 1);
}

std::string Presentation::render_word(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) {
    char c = alphabet.at(static_cast<std::size_t>(l.gen()));
    out.push_back(l.inverted() ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                               : c);
  }
  return out;
}

std::string Presentation::render() const {
  std::string out = "gens:";
  for (char c : alphabet) {
    out.push_back(' ');
    out.push_back(c);
  }
  out.push_back('\n');
  for (const auto& r : relators) out += "rel: " + render_word(r) + "\n";
  return out;
}

std::string Presentation::letter_order() const {
  std::string out;
  for (char c : alphabet) {
    out.push_back(c);
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

std::uint64_t Presentation::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : render()) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string Presentation::hash_hex() const {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = hash();
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

Word GeneratorMap::apply(const Word& w) const {
  Word out;
  for (Letter l : w) {
    const Word& img = images.at(static_cast<std::size_t>(l.gen()));
    if (l.inverted()) {
      Word ii = invert(img);
      out.insert(out.end(), ii.begin(), ii.end());
    } else {
      out.insert(out.end(), img.begin(), img.end());
    }
  }
  return free_reduce(out);
}

bool verify_conjugate_product(const Word& target,
                              const std::vector<ConjugateFactor>& factors,
                              const Presentation& p) {
  Word prod;
  for (const auto& f : factors) {
    const Word& r = p.relators.at(static_cast<std::size_t>(f.relator_index));
    Word piece = f.conjugator;
    Word mid = f.sign >= 0 ? r : invert(r);
    piece.insert(piece.end(), mid.begin(), mid.end());
    Word back = invert(f.conjugator);
    piece.insert(piece.end(), back.begin(), back.end());
    prod.insert(prod.end(), piece.begin(), piece.end());
  }
  return free_reduce(prod) == free_reduce(target);
}

}  // namespace lorder
