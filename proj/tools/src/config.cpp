#include "ergolab/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ergolab/errors.hpp"

namespace ergolab::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(const std::string& key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw InvalidArgument("config: " + key + " must be a nonnegative integer, got '" + std::string(text) + "'");
  return v;
}

std::size_t parse_positive(const std::string& key, std::string_view text) {
  const std::uint64_t v = parse_u64(key, text);
  if (v == 0) throw InvalidArgument("config: " + key + " must be positive");
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& key, std::string_view text) {
  text = trim(text);
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidArgument("");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("config: " + key + " must be a real number, got '" + std::string(text) + "'");
  }
}

std::vector<std::size_t> parse_list(const std::string& key, std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(parse_positive(key, text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

RawConfig parse_config_text(std::string_view text) {
  RawConfig raw;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("config: expected 'key = value' on line " + std::to_string(line_no), line_no);
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError("config: empty key on line " + std::to_string(line_no), line_no);
    raw[key] = std::string(trim(line.substr(eq + 1)));
  }
  return raw;
}

RawConfig read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys{"experiment", "system", "alpha", "beta",   "obs",    "obs2",
                                             "N",          "N-list", "H",     "k",      "grid",   "samples",
                                             "seed",       "trials", "m",     "out"};
  return keys;
}

ExperimentConfig make_experiment_config(const RawConfig& raw) {
  const auto& keys = known_config_keys();
  for (const auto& [key, value] : raw)
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw InvalidArgument("config: unknown key '" + key + "'");

  ExperimentConfig c;
  const auto get = [&](const char* key) -> const std::string* {
    const auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
  };
  if (auto v = get("experiment")) c.experiment = *v;
  if (auto v = get("system")) c.system = *v;
  if (auto v = get("alpha")) c.alpha = parse_real("alpha", *v);
  if (auto v = get("beta")) c.beta = parse_real("beta", *v);
  if (auto v = get("obs")) c.obs = *v;
  if (auto v = get("obs2")) c.obs2 = *v;
  if (auto v = get("N")) c.N = parse_positive("N", *v);
  if (auto v = get("N-list")) c.N_list = parse_list("N-list", *v);
  if (auto v = get("H")) c.H = parse_positive("H", *v);
  if (auto v = get("k")) {
    const std::size_t k = parse_positive("k", *v);
    if (k > static_cast<std::size_t>(kMaxDefaultK))
      throw InvalidArgument("config: k must be at most " + std::to_string(kMaxDefaultK));
    c.k = static_cast<int>(k);
  }
  if (auto v = get("grid")) {
    c.grid = parse_positive("grid", *v);
    if (*c.grid < 2) throw InvalidArgument("config: grid must be at least 2");
  }
  if (auto v = get("samples")) c.samples = parse_positive("samples", *v);
  if (auto v = get("seed")) c.seed = parse_u64("seed", *v);
  if (auto v = get("trials")) c.trials = parse_positive("trials", *v);
  if (auto v = get("m")) c.m = parse_list("m", *v);
  if (auto v = get("out")) c.out = *v;
  if (c.alpha <= 0.0 || c.alpha >= 1.0) throw InvalidArgument("config: alpha must lie in (0,1)");
  if (c.beta <= 0.0 || c.beta >= 1.0) throw InvalidArgument("config: beta must lie in (0,1)");
  return c;
}

namespace {

class SystemParser {
 public:
  SystemParser(std::string_view text, double alpha) : text_(text), alpha_(alpha) {}

  SystemSpec parse() {
    SystemSpec spec = system();
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
    validate(spec);
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("system literal '" + std::string(text_) + "': " + what, pos_);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string name() {
    skip();
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-' ||
                                   text_[pos_] == '_'))
      ++pos_;
    std::string out(text_.substr(begin, pos_ - begin));
    std::replace(out.begin(), out.end(), '_', '-');
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return out;
  }

  double number() {
    skip();
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')' && text_[pos_] != ',') ++pos_;
    const std::string s(trim(text_.substr(begin, pos_ - begin)));
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    pos_ = begin;
    fail("expected an angle");
  }

  SystemSpec angled(SystemKind kind) {
    double a = alpha_;
    if (eat('(')) {
      a = number();
      if (!eat(')')) fail("expected ')'");
    }
    return {kind, a, {}};
  }

  SystemSpec system() {
    const std::string n = name();
    if (n == "rotation") return angled(SystemKind::Rotation);
    if (n == "skew-anzai") return angled(SystemKind::SkewAnzai);
    if (n == "skew-sqrt") return angled(SystemKind::SkewSqrt);
    if (n == "doubling") return SystemSpec::doubling();
    if (n == "product") {
      if (!eat('(')) fail("product needs a component list");
      std::vector<SystemSpec> parts{system()};
      while (eat(',')) parts.push_back(system());
      if (!eat(')')) fail("expected ')'");
      return SystemSpec::product(std::move(parts));
    }
    fail(n.empty() ? "expected a system kind" : "unknown system kind '" + n + "'");
  }

  std::string_view text_;
  double alpha_;
  std::size_t pos_ = 0;
};

}  // namespace

SystemSpec parse_system(std::string_view literal, double default_alpha) {
  return SystemParser(literal, default_alpha).parse();
}

}  // namespace ergolab::cli
