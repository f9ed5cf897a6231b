// Copyright 2026 The WITP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "witp/cli.hpp"
#include "witp/errors.hpp"

namespace witp {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

// Recursive-descent evaluator for + - * / ( ) pi and decimal literals.
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ValidationError("bad number '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  double term() {
    double v = unary();
    for (;;) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  double primary() {
    skip();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_args(const std::string& inner) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : inner) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !parts.empty()) parts.push_back(trim(cur));
  return parts;
}

bool starts_with_call(const std::string& s, const std::string& name) {
  return s.rfind(name + "(", 0) == 0 && s.back() == ')';
}

bool parse_bool(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ValidationError("expected true or false, got '" + v + "'");
}

long long parse_integer(const std::string& v) {
  const double d = parse_number(v);
  if (!std::isfinite(d) || d != std::floor(d) || std::abs(d) > 9.0e15)
    throw ValidationError("expected an integer, got '" + v + "'");
  return static_cast<long long>(d);
}

std::vector<int> parse_int_array(const std::string& v) {
  std::vector<int> out;
  for (double d : parse_array(v)) {
    if (d != std::floor(d) || std::abs(d) > 1e9) throw ValidationError("expected integers in '" + v + "'");
    out.push_back(static_cast<int>(d));
  }
  return out;
}

SwapVariant variant_from_string(const std::string& v) {
  for (SwapVariant s : {SwapVariant::D01, SwapVariant::D02, SwapVariant::BellSequential})
    if (to_string(s) == v) return s;
  throw ValidationError("unknown variant '" + v + "' (d01, d02, bell)");
}

MessageKind message_from_string(const std::string& v) {
  for (MessageKind k : {MessageKind::BasisZero, MessageKind::Arbitrary, MessageKind::BellPhiPlus})
    if (to_string(k) == v) return k;
  throw ValidationError("unknown message '" + v + "' (basis_zero, arbitrary, bell_phi_plus)");
}

Message make_message(MessageKind k) {
  switch (k) {
    case MessageKind::BasisZero: return Message::basis_zero();
    case MessageKind::Arbitrary: return Message::arbitrary(1.0, 0.0);
    case MessageKind::BellPhiPlus: return Message::bell_phi_plus();
  }
  return {};
}

MessageKind message_for_metric(Metric m) {
  switch (m) {
    case Metric::BasisZ: return MessageKind::BasisZero;
    case Metric::ArbitraryAvg: return MessageKind::Arbitrary;
    case Metric::BellStabilizer: return MessageKind::BellPhiPlus;
  }
  return MessageKind::BasisZero;
}

Metric metric_for_message(MessageKind k) {
  switch (k) {
    case MessageKind::BasisZero: return Metric::BasisZ;
    case MessageKind::Arbitrary: return Metric::ArbitraryAvg;
    case MessageKind::BellPhiPlus: return Metric::BellStabilizer;
  }
  return Metric::BasisZ;
}

const std::map<std::string, std::string>& key_sections() {
  static const std::map<std::string, std::string> keys = {
      {"command", "run"},         {"master_seed", "run"},        {"workers", "run"},
      {"out", "run"},             {"label", "run"},              {"model", "model"},
      {"n_majorana", "model"},    {"j_scale", "model"},          {"tfim_h_width", "model"},
      {"tfim_periodic", "model"}, {"message", "protocol"},       {"variant", "protocol"},
      {"g", "protocol"},          {"t", "protocol"},             {"beta", "protocol"},
      {"size_modes", "protocol"}, {"readout_sites", "protocol"}, {"conjugate_right", "protocol"},
      {"metric", "sweep"},        {"g_grid", "sweep"},           {"t_grid", "sweep"},
      {"beta_grid", "sweep"},     {"seeds", "sweep"},            {"n_s", "sweep"},
      {"g_select", "sweep"},      {"x_axis", "heatmap"},         {"y_axis", "heatmap"},
  };
  return keys;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::SweepG: return "sweep-g";
    case Command::SweepT: return "sweep-t";
    case Command::Heatmap: return "heatmap";
    case Command::FitBetaC: return "fit-betac";
    case Command::CompareTfim: return "compare-tfim";
    case Command::Sanity: return "sanity";
  }
  return "?";
}

Command command_from_string(const std::string& name) {
  for (Command c : {Command::SweepG, Command::SweepT, Command::Heatmap, Command::FitBetaC, Command::CompareTfim,
                    Command::Sanity})
    if (to_string(c) == name) return c;
  throw ValidationError("command: unknown value '" + name + "'");
}

RunConfig::RunConfig() {
  spec.base.g = std::numbers::pi / 2.0;
  spec.base.t = 20.0;
  spec.base.beta = 0.0;
}

double parse_number(const std::string& text) {
  const double v = ExprParser(trim(text)).parse();
  if (!std::isfinite(v)) throw ValidationError("bad number '" + text + "': not finite");
  return v;
}

std::vector<double> parse_array(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw ValidationError("empty value");
  if (text.front() == '[') {
    if (text.back() != ']') throw ValidationError("unterminated array '" + text + "'");
    std::vector<double> out;
    for (const auto& part : split_args(text.substr(1, text.size() - 2))) {
      if (part.empty()) throw ValidationError("empty array element in '" + text + "'");
      out.push_back(parse_number(part));
    }
    return out;
  }
  if (starts_with_call(text, "linspace")) {
    const auto args = split_args(text.substr(9, text.size() - 10));
    if (args.size() != 3) throw ValidationError("linspace takes (start, stop, count)");
    const double a = parse_number(args[0]), b = parse_number(args[1]);
    const long long n = parse_integer(args[2]);
    if (n < 1 || n > 10'000'000) throw ValidationError("linspace count must be in [1, 1e7]");
    if (n == 1) return {a};
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) out[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    out.back() = b;
    return out;
  }
  if (starts_with_call(text, "range")) {
    const auto args = split_args(text.substr(6, text.size() - 7));
    if (args.size() != 2 && args.size() != 3) throw ValidationError("range takes (start, stop[, step])");
    const double a = parse_number(args[0]), b = parse_number(args[1]);
    const double step = args.size() == 3 ? parse_number(args[2]) : 1.0;
    if (!(step > 0.0)) throw ValidationError("range step must be > 0");
    const double count = std::floor((b - a) / step + 1e-9);
    if (count < 0.0 || count > 1e7) throw ValidationError("range is empty or too long");
    std::vector<double> out;
    for (long long k = 0; k <= static_cast<long long>(count); ++k) out.push_back(a + static_cast<double>(k) * step);
    return out;
  }
  return {parse_number(text)};
}

SweepSpec effective_spec(const RunConfig& cfg) {
  SweepSpec s = cfg.spec;
  s.master_seed = cfg.manifest.master_seed;
  switch (cfg.manifest.command) {
    case Command::SweepG:
    case Command::FitBetaC: s.t_grid = {s.base.t}; break;
    case Command::SweepT:
      if (cfg.g_select == GSelect::Fixed) s.g_grid = {s.base.g};
      break;
    case Command::Heatmap:
      for (Axis a : {Axis::Beta, Axis::G, Axis::T}) {
        if (a == cfg.heatmap_x || a == cfg.heatmap_y) continue;
        if (a == Axis::Beta) s.beta_grid = {s.base.beta};
        if (a == Axis::G) s.g_grid = {s.base.g};
        if (a == Axis::T) s.t_grid = {s.base.t};
      }
      break;
    case Command::CompareTfim:
      s.t_grid = {s.base.t};
      s.beta_grid = {0.0};
      s.base.model.kind = ModelKind::Syk;
      break;
    case Command::Sanity: break;
  }
  return s;
}

SweepSpec tfim_counterpart(const SweepSpec& spec) {
  SweepSpec s = spec;
  s.base.model.kind = ModelKind::Tfim;
  return s;
}

void RunConfig::validate() const {
  if (manifest.workers < 1) throw ValidationError("workers must be >= 1");
  if (heatmap_x == heatmap_y || heatmap_x == Axis::Seed || heatmap_y == Axis::Seed)
    throw ValidationError("x_axis/y_axis: need two distinct axes among beta, g, t");
  if (manifest.command == Command::Sanity) return;
  const SweepSpec s = effective_spec(*this);
  s.validate();
  if (manifest.command == Command::CompareTfim) tfim_counterpart(s).validate();
  if (manifest.command == Command::FitBetaC && s.beta_grid.size() < 3)
    throw ValidationError("beta_grid: fit-betac needs at least 3 beta values");
}

RunConfig parse_config(const std::string& text, RunConfig cfg) {
  std::optional<MessageKind> message;
  std::optional<SwapVariant> variant;
  std::optional<Metric> metric;
  std::set<std::string> seen;
  std::string section;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    bool quoted = false;
    std::string line;
    for (char c : raw) {
      if (c == '"') quoted = !quoted;
      if (!quoted && (c == '#' || c == ';')) break;
      line += c;
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError(where + "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> sections = {"run", "model", "protocol", "sweep", "heatmap"};
      if (!sections.count(section)) throw ValidationError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    const auto home = key_sections().find(key);
    if (home == key_sections().end() || (!section.empty() && home->second != section))
      throw ValidationError(where + "unknown key '" + key + "'" + (section.empty() ? "" : " in [" + section + "]"));
    if (!seen.insert(key).second) throw ValidationError(where + "duplicate key '" + key + "'");
    if (value.empty()) throw ValidationError(where + "key '" + key + "': empty value");

    try {
      ProtocolConfig& p = cfg.spec.base;
      if (key == "command") {
        cfg.manifest.command = command_from_string(value);
      } else if (key == "master_seed") {
        const long long s = parse_integer(value);
        if (s < 0) throw ValidationError("must be >= 0");
        cfg.manifest.master_seed = static_cast<std::uint64_t>(s);
      } else if (key == "workers") {
        cfg.manifest.workers = static_cast<int>(parse_integer(value));
      } else if (key == "out") {
        cfg.manifest.out_dir = value;
      } else if (key == "label") {
        cfg.label = value;
      } else if (key == "model") {
        if (value == "syk")
          p.model.kind = ModelKind::Syk;
        else if (value == "tfim")
          p.model.kind = ModelKind::Tfim;
        else
          throw ValidationError("unknown model '" + value + "' (syk, tfim)");
      } else if (key == "n_majorana") {
        p.model.n_majorana = static_cast<int>(parse_integer(value));
      } else if (key == "j_scale") {
        p.model.j_scale = parse_number(value);
      } else if (key == "tfim_h_width") {
        p.model.tfim_h_width = parse_number(value);
      } else if (key == "tfim_periodic") {
        p.model.tfim_periodic = parse_bool(value);
      } else if (key == "message") {
        message = message_from_string(value);
      } else if (key == "variant") {
        variant = variant_from_string(value);
      } else if (key == "g") {
        p.g = parse_number(value);
      } else if (key == "t") {
        p.t = parse_number(value);
      } else if (key == "beta") {
        p.beta = parse_number(value);
      } else if (key == "size_modes") {
        p.size_modes = parse_int_array(value);
      } else if (key == "readout_sites") {
        p.readout_sites = parse_int_array(value);
      } else if (key == "conjugate_right") {
        p.conjugate_right = parse_bool(value);
      } else if (key == "metric") {
        metric = metric_from_string(value);
      } else if (key == "g_grid") {
        cfg.spec.g_grid = parse_array(value);
      } else if (key == "t_grid") {
        cfg.spec.t_grid = parse_array(value);
      } else if (key == "beta_grid") {
        cfg.spec.beta_grid = parse_array(value);
      } else if (key == "seeds") {
        cfg.spec.seeds.clear();
        for (double d : parse_array(value)) {
          if (d < 0.0 || d != std::floor(d) || d > 9.0e15) throw ValidationError("seeds must be non-negative integers");
          cfg.spec.seeds.push_back(static_cast<std::uint64_t>(d));
        }
      } else if (key == "n_s") {
        cfg.spec.n_s = static_cast<int>(parse_integer(value));
      } else if (key == "g_select") {
        if (value == "fixed")
          cfg.g_select = GSelect::Fixed;
        else if (value == "peak")
          cfg.g_select = GSelect::Peak;
        else
          throw ValidationError("unknown g_select '" + value + "' (fixed, peak)");
      } else if (key == "x_axis") {
        cfg.heatmap_x = axis_from_string(value);
      } else if (key == "y_axis") {
        cfg.heatmap_y = axis_from_string(value);
      }
    } catch (const ValidationError& e) {
      throw ValidationError(where + "key '" + key + "': " + e.what());
    }
  }

  ProtocolConfig& p = cfg.spec.base;
  const MessageKind msg = message   ? *message
                          : metric  ? message_for_metric(*metric)
                          : variant ? (*variant == SwapVariant::BellSequential ? MessageKind::BellPhiPlus
                                                                               : (p.message.kind == MessageKind::BellPhiPlus
                                                                                      ? MessageKind::BasisZero
                                                                                      : p.message.kind))
                                    : p.message.kind;
  if (msg != p.message.kind) p.message = make_message(msg);
  if (variant)
    p.swap_variant = *variant;
  else if (msg == MessageKind::BellPhiPlus)
    p.swap_variant = SwapVariant::BellSequential;
  else if (p.swap_variant == SwapVariant::BellSequential)
    p.swap_variant = SwapVariant::D01;
  cfg.spec.metric = metric ? *metric : metric_for_message(msg);

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  base.manifest.config_path = path.string();
  return parse_config(buf.str(), std::move(base));
}

std::vector<std::string> figure_names() {
  return {"sq1", "sq2", "isingvssyk", "fig6", "fig7", "fig34", "timeevol", "cffit", "heatmap-g", "heatmap-t",
          "neofidelity"};
}

std::vector<RunConfig> figure_preset(const std::string& name) {
  const auto single = [&](SwapVariant v, Metric m, Command c) {
    RunConfig cfg;
    cfg.label = name;
    cfg.manifest.command = c;
    cfg.spec.metric = m;
    cfg.spec.base.swap_variant = v;
    cfg.spec.base.message = make_message(message_for_metric(m));
    return cfg;
  };
  if (name == "sq1") return {single(SwapVariant::D01, Metric::BasisZ, Command::SweepG)};
  if (name == "sq2") {
    RunConfig c = single(SwapVariant::D02, Metric::BasisZ, Command::SweepG);
    c.spec.beta_grid = {0, 5, 10, 20, 50, 100};
    return {c};
  }
  if (name == "isingvssyk") return {single(SwapVariant::D01, Metric::BasisZ, Command::CompareTfim)};
  if (name == "fig6" || name == "fig7") {
    RunConfig c = single(name == "fig6" ? SwapVariant::D01 : SwapVariant::D02, Metric::BasisZ, Command::SweepT);
    c.g_select = GSelect::Peak;
    return {c};
  }
  if (name == "fig34") return {single(SwapVariant::BellSequential, Metric::BellStabilizer, Command::SweepG)};
  if (name == "timeevol") {
    RunConfig c = single(SwapVariant::BellSequential, Metric::BellStabilizer, Command::SweepT);
    c.g_select = GSelect::Peak;
    return {c};
  }
  if (name == "cffit") return {single(SwapVariant::BellSequential, Metric::BellStabilizer, Command::FitBetaC)};
  if (name == "heatmap-g" || name == "heatmap-t") {
    RunConfig c = single(SwapVariant::BellSequential, Metric::BellStabilizer, Command::Heatmap);
    c.heatmap_x = name == "heatmap-g" ? Axis::G : Axis::T;
    return {c};
  }
  if (name == "neofidelity") {
    RunConfig a = single(SwapVariant::D01, Metric::ArbitraryAvg, Command::SweepG);
    RunConfig b = single(SwapVariant::D02, Metric::ArbitraryAvg, Command::SweepG);
    a.label += "-d01";
    b.label += "-d02";
    a.spec.beta_grid = b.spec.beta_grid = {0, 20};
    return {a, b};
  }
  throw ValidationError("figure: unknown label '" + name + "'");
}

}  // namespace witp
