#include "roadstate/net/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>

#include "roadstate/util/io.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian");

namespace roadstate::net {

namespace {

constexpr char kMagic[4] = {'R', 'S', 'N', 'N'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof(v));
}

void put_f64(std::string& out, double v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof(v));
}

class Reader {
public:
  explicit Reader(std::string bytes, std::string path)
      : bytes_(std::move(bytes)), path_(std::move(path)) {}

  std::uint32_t u32() {
    std::uint32_t v;
    take(&v, sizeof(v));
    return v;
  }
  double f64() {
    double v;
    take(&v, sizeof(v));
    return v;
  }
  void magic() {
    char m[4];
    take(m, 4);
    if (std::memcmp(m, kMagic, 4) != 0)
      throw IoError(path_ + ": not a RSNN checkpoint");
  }
  void done() const {
    if (pos_ != bytes_.size()) throw IoError(path_ + ": trailing bytes");
  }

private:
  void take(void* dst, size_t n) {
    if (pos_ + n > bytes_.size()) throw IoError(path_ + ": truncated checkpoint");
    std::memcpy(dst, bytes_.data() + pos_, n);
    pos_ += n;
  }
  std::string bytes_;
  std::string path_;
  size_t pos_ = 0;
};

void append_mlp(std::string& out, const Mlp& mlp) {
  put_u32(out, static_cast<std::uint32_t>(mlp.n_layers()));
  for (int l = 0; l < mlp.n_layers(); ++l) {
    const auto& w = mlp.weights()[l];
    const auto& b = mlp.biases()[l];
    put_u32(out, static_cast<std::uint32_t>(w.rows()));
    put_u32(out, static_cast<std::uint32_t>(w.cols()));
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) put_f64(out, w(r, c));
    for (Eigen::Index r = 0; r < b.size(); ++r) put_f64(out, b[r]);
  }
}

struct MlpShape {
  std::vector<int> widths;
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;
};

MlpShape read_mlp(Reader& in) {
  MlpShape shape;
  const std::uint32_t layers = in.u32();
  if (layers == 0 || layers > 64) throw IoError("checkpoint: bad layer count");
  shape.w.resize(layers);
  shape.b.resize(layers);
  for (std::uint32_t l = 0; l < layers; ++l) {
    const std::uint32_t rows = in.u32();
    const std::uint32_t cols = in.u32();
    if (rows == 0 || cols == 0 || rows > 65536 || cols > 65536)
      throw IoError("checkpoint: bad layer shape");
    if (l == 0) shape.widths.push_back(static_cast<int>(cols));
    shape.widths.push_back(static_cast<int>(rows));
    shape.w[l].resize(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r)
      for (std::uint32_t c = 0; c < cols; ++c) shape.w[l](r, c) = in.f64();
    shape.b[l].resize(rows);
    for (std::uint32_t r = 0; r < rows; ++r) shape.b[l][r] = in.f64();
  }
  return shape;
}

void write_sidecar(const std::string& path, nlohmann::json base,
                   const nlohmann::json& extra) {
  for (const auto& [key, value] : extra.items()) base[key] = value;
  util::atomic_write_file(path + ".json", base.dump(2) + "\n");
}

}  // namespace

void save_shared_head(const SharedHeadNet& net, const std::string& path,
                      const nlohmann::json& sidecar_extra) {
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, kVersion);
  append_mlp(out, net.features());
  put_u32(out, net.has_v_head() ? 2u : 1u);
  put_u32(out, static_cast<std::uint32_t>(net.head_rho().size()));
  for (Eigen::Index i = 0; i < net.head_rho().size(); ++i)
    put_f64(out, net.head_rho()[i]);
  if (net.has_v_head()) {
    put_u32(out, static_cast<std::uint32_t>(net.head_v().size()));
    for (Eigen::Index i = 0; i < net.head_v().size(); ++i)
      put_f64(out, net.head_v()[i]);
  }
  util::atomic_write_file(path, out);

  const auto& widths = net.features().widths();
  write_sidecar(path,
                nlohmann::json{
                    {"kind", "shared_head"},
                    {"feature_hidden",
                     std::vector<int>(widths.begin() + 1, widths.end())},
                    {"n_heads", net.has_v_head() ? 2 : 1},
                    {"embedding", "t-affine,x-ring"},
                },
                sidecar_extra);
}

SharedHeadNet load_shared_head(const std::string& path) {
  Reader in(util::read_file(path), path);
  in.magic();
  if (in.u32() != kVersion) throw IoError(path + ": unsupported format version");
  MlpShape shape = read_mlp(in);
  if (shape.widths.front() != 3)
    throw IoError(path + ": shared-head checkpoint must have 3 inputs");

  const std::uint32_t n_heads = in.u32();
  if (n_heads != 1 && n_heads != 2)
    throw IoError(path + ": shared-head checkpoint needs 1 or 2 heads");

  std::vector<Eigen::VectorXd> heads(n_heads);
  for (auto& head : heads) {
    const std::uint32_t len = in.u32();
    if (len != static_cast<std::uint32_t>(shape.widths.back()))
      throw IoError(path + ": head length does not match feature width");
    head.resize(len);
    for (std::uint32_t i = 0; i < len; ++i) head[i] = in.f64();
  }
  in.done();

  SharedHeadNet net(std::vector<int>(shape.widths.begin() + 1, shape.widths.end()),
                    n_heads == 2);
  net.features().weights() = std::move(shape.w);
  net.features().biases() = std::move(shape.b);
  net.head_rho() = heads[0];
  if (n_heads == 2) net.head_v() = heads[1];
  return net;
}

void save_veq(const VeqNet& net, const std::string& path,
              const nlohmann::json& sidecar_extra) {
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, kVersion);
  append_mlp(out, net.psi());
  put_u32(out, 0u);  // no read-out heads; psi's last layer is the output
  util::atomic_write_file(path, out);

  const auto& widths = net.psi().widths();
  write_sidecar(path,
                nlohmann::json{
                    {"kind", "veq"},
                    {"psi_hidden",
                     std::vector<int>(widths.begin() + 1, widths.end() - 1)},
                },
                sidecar_extra);
}

VeqNet load_veq(const std::string& path) {
  Reader in(util::read_file(path), path);
  in.magic();
  if (in.u32() != kVersion) throw IoError(path + ": unsupported format version");
  MlpShape shape = read_mlp(in);
  if (shape.widths.front() != 1 || shape.widths.back() != 1)
    throw IoError(path + ": veq checkpoint must map one scalar to one scalar");
  if (in.u32() != 0) throw IoError(path + ": veq checkpoint carries no heads");
  in.done();

  VeqNet net(std::vector<int>(shape.widths.begin() + 1, shape.widths.end() - 1));
  net.psi().weights() = std::move(shape.w);
  net.psi().biases() = std::move(shape.b);
  return net;
}

nlohmann::json load_sidecar(const std::string& checkpoint_path) {
  const std::string path = checkpoint_path + ".json";
  if (!std::filesystem::exists(path)) return nlohmann::json::object();
  return nlohmann::json::parse(util::read_file(path));
}

}  // namespace roadstate::net
