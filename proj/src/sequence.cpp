#include "wpg/sequence.hpp"

#include <fstream>
#include <sstream>

namespace wpg {

SeqSpec SeqSpec::constant(ScalarSpec c) { return SeqSpec(Kind::Constant, {c}); }
SeqSpec SeqSpec::linear(ScalarSpec c, ScalarSpec d) { return SeqSpec(Kind::Linear, {c, d}); }
SeqSpec SeqSpec::power(ScalarSpec beta) { return SeqSpec(Kind::Power, {beta}); }
SeqSpec SeqSpec::geometric(ScalarSpec c, ScalarSpec ratio) { return SeqSpec(Kind::Geometric, {c, ratio}); }
SeqSpec SeqSpec::affine_geometric(ScalarSpec c, ScalarSpec d, ScalarSpec ratio) {
  return SeqSpec(Kind::AffineGeometric, {c, d, ratio});
}

SeqSpec SeqSpec::from_values(std::vector<ScalarSpec> values, std::string label) {
  SeqSpec s(Kind::File, {});
  s.values_ = std::move(values);
  s.label_ = std::move(label);
  return s;
}

SeqSpec SeqSpec::from_file(const std::string& path) {
  return from_values(parse_sequence_csv(path), path);
}

SeqSpec SeqSpec::with_tail(SeqSpec tail) const {
  if (kind_ != Kind::File) raise(errc::invalid_parameter, "tail rules apply to file-backed sequences only");
  if (tail.kind_ == Kind::File) raise(errc::invalid_parameter, "tail rule must be a closed-form preset");
  SeqSpec s = *this;
  s.tail_ = std::make_shared<const SeqSpec>(std::move(tail));
  return s;
}

bool is_integer(const ScalarSpec& s) {
  return s.exact_representable() && s.as_rational().get_den() == 1;
}

bool SeqSpec::exact_representable() const {
  for (const auto& p : params_)
    if (!p.exact_representable()) return false;
  for (const auto& v : values_)
    if (!v.exact_representable()) return false;
  if (kind_ == Kind::Power && !is_integer(params_[0])) return false;
  if (tail_ && !tail_->exact_representable()) return false;
  return true;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

SeqSpec SeqSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    raise(errc::parse_error, "sequence spec '" + text + "' (expected kind:params)");
  std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (kind == "file") return from_file(rest);
  auto parts = split(rest, ',');
  auto want = [&](size_t k) {
    if (parts.size() != k)
      raise(errc::parse_error, "sequence spec '" + text + "' expects " + std::to_string(k) + " parameter(s)");
  };
  if (kind == "const") {
    want(1);
    return constant(ScalarSpec::parse(parts[0]));
  }
  if (kind == "linear") {
    want(2);
    return linear(ScalarSpec::parse(parts[0]), ScalarSpec::parse(parts[1]));
  }
  if (kind == "power") {
    want(1);
    return power(ScalarSpec::parse(parts[0]));
  }
  if (kind == "geom") {
    want(2);
    return geometric(ScalarSpec::parse(parts[0]), ScalarSpec::parse(parts[1]));
  }
  if (kind == "affgeom") {
    want(3);
    return affine_geometric(ScalarSpec::parse(parts[0]), ScalarSpec::parse(parts[1]),
                            ScalarSpec::parse(parts[2]));
  }
  raise(errc::parse_error, "unknown sequence preset '" + kind + "'");
}

std::string SeqSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant: os << "const:" << params_[0].describe(); break;
    case Kind::Linear: os << "linear:" << params_[0].describe() << "," << params_[1].describe(); break;
    case Kind::Power: os << "power:" << params_[0].describe(); break;
    case Kind::Geometric: os << "geom:" << params_[0].describe() << "," << params_[1].describe(); break;
    case Kind::AffineGeometric:
      os << "affgeom:" << params_[0].describe() << "," << params_[1].describe() << ","
         << params_[2].describe();
      break;
    case Kind::File: os << "file:" << label_ << "[" << values_.size() << "]"; break;
  }
  if (tail_) os << "+tail(" << tail_->describe() << ")";
  return os.str();
}

std::vector<ScalarSpec> parse_sequence_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open sequence file '" + path + "'");
  std::vector<ScalarSpec> values;
  std::string line;
  long row = -1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row == -1) {
      // header: "n,value" or "h,value"
      row = 0;
      auto cols = split(line, ',');
      if (cols.size() != 2 || (cols[0] != "n" && cols[0] != "h") || cols[1] != "value")
        raise(errc::parse_error, "sequence file '" + path + "': expected header 'n,value'");
      continue;
    }
    auto cols = split(line, ',');
    if (cols.size() != 2) raise(errc::parse_error, "sequence file '" + path + "': bad row '" + line + "'");
    long idx = 0;
    try {
      idx = std::stol(cols[0]);
    } catch (...) {
      raise(errc::parse_error, "sequence file '" + path + "': bad index '" + cols[0] + "'");
    }
    if (idx != row)
      raise(errc::parse_error, "sequence file '" + path + "': rows must be consecutive from 0");
    values.push_back(ScalarSpec::parse(cols[1]));
    ++row;
  }
  if (values.empty()) raise(errc::parse_error, "sequence file '" + path + "' has no rows");
  return values;
}

}  // namespace wpg
