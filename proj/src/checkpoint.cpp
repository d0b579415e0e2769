#include "dae/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "dae/error.hpp"
#include "file_bytes.hpp"

namespace dae {

namespace {

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<unsigned char>(bits >> (8 * i)));
  }
  void raw(const char* p, std::size_t n) { bytes_.insert(bytes_.end(), p, p + n); }
  std::vector<unsigned char> take() { return std::move(bytes_); }

 private:
  std::vector<unsigned char> bytes_;
};

class Reader {
 public:
  explicit Reader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes_[pos_++]} << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= std::uint64_t{bytes_[pos_++]} << (8 * i);
    return std::bit_cast<double>(bits);
  }
  std::size_t position() const { return pos_; }
  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw TruncatedError("checkpoint truncated", bytes_.size());
  }

  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 0;
};

void write_spec(Writer& w, const MlpSpec& spec) {
  w.u32(static_cast<std::uint32_t>(spec.layer_count()));
  for (std::size_t s : spec.layer_sizes) w.u32(static_cast<std::uint32_t>(s));
  w.u32(static_cast<std::uint32_t>(spec.hidden));
  w.f64(spec.leaky_slope);
  w.u32(static_cast<std::uint32_t>(spec.output));
}

MlpSpec read_spec(Reader& r) {
  const std::size_t at = r.position();
  const std::uint32_t layers = r.u32();
  if (layers == 0 || layers > 64) throw ShapeError("checkpoint: implausible layer count");
  MlpSpec spec;
  for (std::uint32_t i = 0; i <= layers; ++i) spec.layer_sizes.push_back(r.u32());
  const std::uint32_t hidden = r.u32();
  spec.leaky_slope = r.f64();
  const std::uint32_t output = r.u32();
  if (hidden > 1 || output > 1) throw FormatError("checkpoint: unknown activation tag", at);
  spec.hidden = static_cast<HiddenActivation>(hidden);
  spec.output = static_cast<OutputActivation>(output);
  try {
    spec.validate();
  } catch (const ArgumentError& e) {
    throw ShapeError(std::string("checkpoint: ") + e.what());
  }
  return spec;
}

}  // namespace

std::vector<unsigned char> serialize_checkpoint(const Autoencoder& model) {
  model.validate();
  std::vector<const Mlp*> nets{&model.encoder, &model.decoder};
  if (model.discriminator) nets.push_back(&*model.discriminator);

  Writer w;
  w.raw(kCheckpointMagic, 4);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(model.kind));
  w.f64(model.corruption.sigma);
  w.f64(model.discriminator_dropout);
  w.u32(static_cast<std::uint32_t>(nets.size()));
  for (const Mlp* net : nets) write_spec(w, net->spec);
  for (const Mlp* net : nets) {
    for (const Tensor* t : net->params.tensors()) {
      for (double v : t->data()) w.f64(v);
    }
  }
  return w.take();
}

Autoencoder deserialize_checkpoint(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 4) throw TruncatedError("checkpoint truncated", bytes.size());
  if (std::memcmp(bytes.data(), kCheckpointMagic, 4) != 0) {
    throw FormatError("checkpoint: bad magic, expected \"DAEB\"", 0);
  }
  Reader r(bytes);
  r.u32();  // magic
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) {
    throw VersionError("checkpoint: unsupported format version " + std::to_string(version), 4);
  }
  const std::uint32_t kind = r.u32();
  if (kind > 2) throw FormatError("checkpoint: unknown model kind", 8);

  Autoencoder model;
  model.kind = static_cast<ModelKind>(kind);
  model.corruption.sigma = r.f64();
  model.discriminator_dropout = r.f64();
  const std::uint32_t net_count = r.u32();
  const std::uint32_t expected = model.kind == ModelKind::daae ? 3 : 2;
  if (net_count != expected) throw ShapeError("checkpoint: wrong number of networks for kind");

  std::vector<Mlp> nets(net_count);
  for (auto& net : nets) net.spec = read_spec(r);
  for (auto& net : nets) {
    net.params = MlpParams::zeros_like(net.spec);
    for (Tensor* t : net.params.tensors()) {
      for (double& v : t->data()) v = r.f64();
    }
  }
  if (!r.at_end()) throw FormatError("checkpoint: trailing bytes", r.position());

  model.encoder = std::move(nets[0]);
  model.decoder = std::move(nets[1]);
  if (net_count == 3) model.discriminator = std::move(nets[2]);
  try {
    model.validate();
  } catch (const ArgumentError& e) {
    throw ShapeError(std::string("checkpoint: ") + e.what());
  }
  return model;
}

void save_checkpoint(const Autoencoder& model, const std::filesystem::path& path) {
  detail::write_file_bytes(path, serialize_checkpoint(model));
}

Autoencoder load_checkpoint(const std::filesystem::path& path) {
  return deserialize_checkpoint(detail::read_file_bytes(path));
}

}  // namespace dae
