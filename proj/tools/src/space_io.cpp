#include "wrb_cli/space_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace wrb::cli {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'W', 'R', 'B', 'S', 'P', 'A', 'C', 'E'};

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    std::memcpy(&v, bytes, sizeof(T));
  }
  return v;
}

template <typename T>
void write_scalar(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_scalar(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw InvalidArgument("space container: truncated file");
  return to_little(v);
}

struct ArrayRef {
  std::string name;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  const double* data = nullptr;
};

class Writer {
 public:
  void add(std::string name, const Matrix& m) { arrays_.push_back({std::move(name), m.rows(), m.cols(), m.data()}); }
  void add(std::string name, const Vector& v) { arrays_.push_back({std::move(name), v.size(), 1, v.data()}); }
  template <typename Seq>
  void add_all(const std::string& prefix, const Seq& items) {
    for (std::size_t i = 0; i < items.size(); ++i) add(prefix + "/" + std::to_string(i), items[i]);
  }
  [[nodiscard]] json index() const {
    json list = json::array();
    for (const auto& a : arrays_) list.push_back({{"name", a.name}, {"rows", a.rows}, {"cols", a.cols}});
    return list;
  }
  void write_data(std::ostream& out) const {
    for (const auto& a : arrays_) {
      const auto n = static_cast<std::size_t>(a.rows * a.cols);
      for (std::size_t i = 0; i < n; ++i) write_scalar(out, a.data[i]);
    }
  }

 private:
  std::vector<ArrayRef> arrays_;
};

}  // namespace

void save_space(const std::string& path, const StoredSpace& stored) {
  const auto& s = stored.space;
  Writer w;
  w.add("basis", s.basis);
  w.add_all("a", s.a);
  w.add_all("s", s.s);
  w.add_all("m", s.m);
  w.add_all("m_stab", s.m_stab);
  w.add_all("f", s.f);
  w.add_all("r", s.r);
  w.add("res_f", s.res_f);
  w.add("res_r", s.res_r);
  w.add_all("res_a", s.res_a);
  w.add_all("res_s", s.res_s);
  w.add_all("res_m", s.res_m);
  w.add_all("res_m_stab", s.res_m_stab);
  if (s.has_initial) {
    w.add("initial", s.initial);
    w.add_all("initial_mass_cross", s.initial_mass_cross);
  }

  json header{{"problem_id", s.problem_id},
              {"num_free", s.num_free},
              {"size", s.size()},
              {"selected", s.selected},
              {"counts",
               {{"a", s.a.size()},
                {"s", s.s.size()},
                {"m", s.m.size()},
                {"m_stab", s.m_stab.size()},
                {"f", s.f.size()},
                {"r", s.r.size()}}},
              {"coercivity", {{"reference", s.coercivity.reference}, {"alpha_reference", s.coercivity.alpha_reference}}},
              {"has_initial", s.has_initial},
              {"initial_mass_self", s.initial_mass_self},
              {"meta", stored.meta},
              {"arrays", w.index()}};
  const std::string text = header.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("space container: cannot write " + path);
  out.write(kMagic, sizeof kMagic);
  write_scalar<std::uint32_t>(out, kSpaceFormatVersion);
  write_scalar<std::uint64_t>(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  w.write_data(out);
  if (!out) throw InvalidArgument("space container: write failed for " + path);
}

StoredSpace load_space(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("space container: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) throw InvalidArgument(path + ": not a space container");
  const auto version = read_scalar<std::uint32_t>(in);
  if (version != kSpaceFormatVersion) {
    throw InvalidArgument(path + ": unsupported container version " + std::to_string(version));
  }
  const auto length = read_scalar<std::uint64_t>(in);
  std::string text(length, '\0');
  in.read(text.data(), static_cast<std::streamsize>(length));
  if (!in) throw InvalidArgument(path + ": truncated header");
  json header;
  try {
    header = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path + ": malformed header: " + e.what());
  }

  std::map<std::string, Matrix> arrays;
  for (const auto& a : header.at("arrays")) {
    const auto rows = a.at("rows").get<Eigen::Index>();
    const auto cols = a.at("cols").get<Eigen::Index>();
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows * cols; ++i) m.data()[i] = read_scalar<double>(in);
    arrays.emplace(a.at("name").get<std::string>(), std::move(m));
  }
  auto take = [&](const std::string& name) -> Matrix {
    const auto it = arrays.find(name);
    if (it == arrays.end()) throw InvalidArgument(path + ": missing array " + name);
    return it->second;
  };
  auto take_list = [&](const std::string& prefix) {
    std::vector<Matrix> out;
    const auto n = header.at("counts").at(prefix).get<std::size_t>();
    for (std::size_t i = 0; i < n; ++i) out.push_back(take(prefix + "/" + std::to_string(i)));
    return out;
  };
  auto as_vectors = [](const std::vector<Matrix>& ms) {
    std::vector<Vector> out;
    for (const auto& m : ms) out.emplace_back(m.col(0));
    return out;
  };

  StoredSpace stored;
  auto& s = stored.space;
  s.problem_id = header.at("problem_id").get<std::string>();
  s.num_free = header.at("num_free").get<int>();
  s.basis = take("basis");
  s.selected = header.at("selected").get<std::vector<Parameter>>();
  s.a = take_list("a");
  s.s = take_list("s");
  s.m = take_list("m");
  s.m_stab = take_list("m_stab");
  s.f = as_vectors(take_list("f"));
  s.r = as_vectors(take_list("r"));
  s.res_f = take("res_f");
  s.res_r = take("res_r");
  auto residuals = [&](const std::string& prefix, const std::string& count_key) {
    std::vector<Matrix> out;
    const auto n = header.at("counts").at(count_key).get<std::size_t>();
    for (std::size_t i = 0; i < n; ++i) out.push_back(take(prefix + "/" + std::to_string(i)));
    return out;
  };
  s.res_a = residuals("res_a", "a");
  s.res_s = residuals("res_s", "s");
  s.res_m = residuals("res_m", "m");
  s.res_m_stab = residuals("res_m_stab", "m_stab");
  s.coercivity.reference = header.at("coercivity").at("reference").get<Parameter>();
  s.coercivity.alpha_reference = header.at("coercivity").at("alpha_reference").get<double>();
  s.has_initial = header.at("has_initial").get<bool>();
  s.initial_mass_self = header.at("initial_mass_self").get<std::vector<double>>();
  if (s.has_initial) {
    s.initial = take("initial").col(0);
    for (std::size_t i = 0; i < s.m.size(); ++i) {
      s.initial_mass_cross.emplace_back(take("initial_mass_cross/" + std::to_string(i)).col(0));
    }
  }
  if (s.basis.rows() != s.num_free || header.at("size").get<int>() != s.size()) {
    throw InvalidArgument(path + ": header does not match the stored basis");
  }
  stored.meta = header.at("meta");
  return stored;
}

}  // namespace wrb::cli
