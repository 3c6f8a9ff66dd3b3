#include "lsopt/table_io.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lsopt {

namespace {

constexpr char kMagic[4] = {'L', 'S', 'V', 'T'};

template <typename T>
void put(std::string& out, const T& v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void put_array(std::string& out, const std::vector<T>& v) {
  out.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  void read(void* dst, std::size_t len) {
    if (pos_ + len > bytes_.size()) throw std::runtime_error("table file truncated");
    std::memcpy(dst, bytes_.data() + pos_, len);
    pos_ += len;
  }
  template <typename T>
  T get() {
    T v;
    read(&v, sizeof(T));
    return v;
  }
  template <typename T>
  std::vector<T> get_array(std::size_t count) {
    std::vector<T> v(count);
    read(v.data(), count * sizeof(T));
    return v;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_table(const ValueTable& table) {
  nlohmann::json header = {
      {"version", kTableFormatVersion},
      {"model", to_json(table.model().spec())},
      {"cost", table.cost},
      {"n", table.shape.n},
      {"m", table.shape.m},
  };
  const std::string text = header.dump();
  std::string out(kMagic, 4);
  put(out, kTableFormatVersion);
  put(out, static_cast<std::uint64_t>(text.size()));
  out += text;
  put_array(out, table.values);
  put_array(out, table.actions);
  put_array(out, table.rewards->stop);
  put_array(out, table.rewards->gain);
  put_array(out, table.rewards->gain_split);
  return out;
}

ValueTable deserialize_table(const std::string& bytes) {
  Reader r(bytes);
  char magic[4];
  r.read(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("not a value table file");
  const auto version = r.get<std::uint32_t>();
  if (version != kTableFormatVersion) throw std::runtime_error("unsupported table version");
  const auto header_len = r.get<std::uint64_t>();
  std::string text(header_len, '\0');
  r.read(text.data(), header_len);
  const auto header = nlohmann::json::parse(text);

  auto model = make_model(model_spec_from_json(header.at("model")));
  const TableShape shape{header.at("n").get<int>(), header.at("m").get<int>()};
  if (shape.n != model->n() || shape.m != model->m()) {
    throw std::runtime_error("table shape does not match its model header");
  }
  auto rewards = std::make_shared<RewardTables>();
  rewards->model = model;
  rewards->shape = shape;

  ValueTable t;
  t.cost = header.at("cost").get<double>();
  t.shape = shape;
  t.values = r.get_array<double>(shape.size());
  t.actions = r.get_array<std::int32_t>(shape.size());
  rewards->stop = r.get_array<double>(shape.size());
  rewards->gain = r.get_array<double>(shape.size());
  rewards->gain_split = r.get_array<std::int32_t>(shape.size());
  if (!r.done()) throw std::runtime_error("trailing bytes in table file");
  t.rewards = std::move(rewards);
  return t;
}

void write_table(const ValueTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string bytes = serialize_table(table);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

ValueTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_table(bytes);
}

std::string table_checksum(const ValueTable& table) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_table(table)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << hash;
  return os.str();
}

}  // namespace lsopt
