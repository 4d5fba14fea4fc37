#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sintra/codec.hpp"
#include "sintra/corpus.hpp"
#include "sintra/metrics.hpp"

namespace py = pybind11;
using namespace sintra;

namespace {

using Array = py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>;

// (H, W) for one plane, (P, H, W) for several.
Frame frame_from_array(const Array& a, int bit_depth) {
  if (a.ndim() != 2 && a.ndim() != 3) throw UsageError("frame arrays are (H, W) or (planes, H, W)");
  const int planes = a.ndim() == 2 ? 1 : static_cast<int>(a.shape(0));
  const int h = static_cast<int>(a.shape(a.ndim() - 2));
  const int w = static_cast<int>(a.shape(a.ndim() - 1));
  const std::uint16_t* data = a.data();
  std::vector<Plane> out;
  for (int p = 0; p < planes; ++p) {
    const auto n = static_cast<std::size_t>(w) * h;
    out.emplace_back(w, h, bit_depth, std::vector<Sample>(data + p * n, data + (p + 1) * n));
    out.back().validate();
  }
  return Frame(std::move(out));
}

Array frame_to_array(const Frame& f) {
  const auto n = static_cast<std::size_t>(f.width()) * f.height();
  Array a = f.plane_count() == 1
                ? Array({static_cast<py::ssize_t>(f.height()), static_cast<py::ssize_t>(f.width())})
                : Array({static_cast<py::ssize_t>(f.plane_count()), static_cast<py::ssize_t>(f.height()),
                         static_cast<py::ssize_t>(f.width())});
  std::uint16_t* out = a.mutable_data();
  for (int p = 0; p < f.plane_count(); ++p) {
    const auto s = f.plane(p).samples();
    std::copy(s.begin(), s.end(), out + p * n);
  }
  return a;
}

std::vector<Frame> frames_from(const py::object& obj, int bit_depth) {
  std::vector<Frame> frames;
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    for (const auto& item : obj) frames.push_back(frame_from_array(item.cast<Array>(), bit_depth));
  } else {
    frames.push_back(frame_from_array(obj.cast<Array>(), bit_depth));
  }
  if (frames.empty()) throw UsageError("no frames");
  return frames;
}

Variant variant_of(const std::string& name) {
  const auto v = parse_variant(name);
  if (!v) throw UsageError("unknown variant: " + name);
  return *v;
}

py::dict decision_dict(const ModeDecision& d) {
  py::dict out;
  out["plane"] = d.block.plane_index;
  out["x"] = d.block.x;
  out["y"] = d.block.y;
  out["size"] = d.block.size;
  out["mode"] = d.mode.index();
  out["interp"] = std::string(to_string(d.interp));
  out["flag"] = d.flag_signaled;
  return out;
}

py::list decisions_list(const std::vector<std::vector<ModeDecision>>& log) {
  py::list frames;
  for (const auto& f : log) {
    py::list l;
    for (const auto& d : f) l.append(decision_dict(d));
    frames.append(l);
  }
  return frames;
}

py::list arrays(const std::vector<Frame>& frames) {
  py::list out;
  for (const Frame& f : frames) out.append(frame_to_array(f));
  return out;
}

RateCurve curve_of(const std::vector<std::pair<double, double>>& pts) {
  RateCurve c;
  for (auto [r, q] : pts) c.points.push_back({r, q});
  return c;
}

}  // namespace

PYBIND11_MODULE(_sintra, m) {
  m.doc() = "Intra codec with selectable angular interpolation";

  static py::exception<Error> error(m, "SintraError", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", error.ptr());
  py::register_exception<DecodeError>(m, "DecodeError", error.ptr());
  py::register_exception<MetricError>(m, "MetricError", error.ptr());

  m.def("variants", [] {
    std::vector<std::string> out;
    for (Variant v : all_variants()) out.emplace_back(to_string(v));
    return out;
  });

  m.def(
      "gen",
      [](const std::string& style, int width, int height, std::uint64_t seed, int planes, int bit_depth) {
        const auto s = parse_content_style(style);
        if (!s) throw UsageError("unknown style: " + style);
        return frame_to_array(gen_screen_content({width, height, seed, *s, planes, bit_depth}));
      },
      py::arg("style"), py::arg("width") = 64, py::arg("height") = 64, py::arg("seed") = 1, py::arg("planes") = 1,
      py::arg("bit_depth") = 8);

  m.def(
      "encode",
      [](const py::object& frames, const std::string& variant, int qp, int bit_depth, int sad_threshold,
         int pixdiff_threshold, bool single_context, bool all_block_sizes, int candidates) {
        EncoderConfig cfg;
        cfg.params.variant = variant_of(variant);
        cfg.params.qp = qp;
        cfg.params.sad_threshold = sad_threshold;
        cfg.params.pixdiff_threshold = pixdiff_threshold;
        cfg.params.single_context = single_context;
        cfg.params.restrict_4x4 = !all_block_sizes;
        cfg.candidate_list_size = candidates;
        const auto in = frames_from(frames, bit_depth);
        EncodeResult r;
        {
          py::gil_scoped_release release;
          r = encode(in, cfg);
        }
        py::dict out;
        out["stream"] = py::bytes(reinterpret_cast<const char*>(r.stream.data()), r.stream.size());
        out["recon"] = arrays(r.recon);
        out["decisions"] = decisions_list(r.decisions);
        out["flags"] = r.flag_count;
        return out;
      },
      py::arg("frames"), py::arg("variant") = "rdo", py::arg("qp") = 27, py::arg("bit_depth") = 8,
      py::arg("sad_threshold") = 64, py::arg("pixdiff_threshold") = 128, py::arg("single_context") = false,
      py::arg("all_block_sizes") = false, py::arg("candidates") = 8);

  m.def(
      "decode",
      [](const py::bytes& stream) {
        const std::string s = stream;
        const std::vector<std::uint8_t> bytes(s.begin(), s.end());
        DecodeResult r;
        {
          py::gil_scoped_release release;
          r = decode(bytes);
        }
        py::dict out;
        out["frames"] = arrays(r.frames);
        out["decisions"] = decisions_list(r.decisions);
        out["flags"] = r.flag_count;
        out["width"] = r.header.width;
        out["height"] = r.header.height;
        out["bit_depth"] = r.header.bit_depth;
        out["variant"] = std::string(to_string(r.header.params.variant));
        out["qp"] = r.header.params.qp;
        return out;
      },
      py::arg("stream"));

  m.def(
      "predict",
      [](const std::vector<int>& left, int corner, const std::vector<int>& top, int mode, const std::string& interp,
         int bit_depth) {
        const int n = static_cast<int>(left.size()) / 2;
        if (!is_valid_block_size(n) || left.size() != top.size() || left.size() % 2) {
          throw UsageError("left and top need 2N samples each, N in {4, 8, 16, 32}");
        }
        const auto kind = parse_interp_kind(interp);
        if (!kind) throw UsageError("interp must be bilinear or nearest");
        ReferenceSamples refs(n, bit_depth);
        for (int i = 0; i < 2 * n; ++i) {
          refs.set_left(i, static_cast<Sample>(left[static_cast<std::size_t>(i)]));
          refs.set_top(i, static_cast<Sample>(top[static_cast<std::size_t>(i)]));
        }
        refs.set_corner(static_cast<Sample>(corner));
        const PredBlock p = predict(refs, IntraMode(mode), *kind);
        Array a({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(n)});
        std::copy(p.samples.begin(), p.samples.end(), a.mutable_data());
        return a;
      },
      py::arg("left"), py::arg("corner"), py::arg("top"), py::arg("mode"), py::arg("interp") = "bilinear",
      py::arg("bit_depth") = 8);

  m.def(
      "psnr",
      [](const Array& a, const Array& b, int bit_depth) {
        const Frame fa = frame_from_array(a, bit_depth);
        const Frame fb = frame_from_array(b, bit_depth);
        if (fa.plane_count() != fb.plane_count()) throw UsageError("plane counts differ");
        std::vector<double> out;
        for (int p = 0; p < fa.plane_count(); ++p) out.push_back(psnr(fa.plane(p), fb.plane(p)));
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("bit_depth") = 8);

  m.def(
      "bd_rate",
      [](const std::vector<std::pair<double, double>>& anchor, const std::vector<std::pair<double, double>>& test) {
        return bd_rate(curve_of(anchor), curve_of(test));
      },
      py::arg("anchor"), py::arg("test"), "Curves are lists of (bitrate, psnr).");
  m.def("compression_gain", &compression_gain, py::arg("cr_proposed"), py::arg("cr_anchor"));
  m.def("time_ratio", &time_ratio, py::arg("proposed_seconds"), py::arg("anchor_seconds"));
  m.def("lambda_from_qp", &lambda_from_qp, py::arg("qp"));

  m.def(
      "hit_ratio",
      [](const py::object& stream, int frame) {
        const std::string s = stream.cast<py::bytes>();
        const DecodeResult r = decode(std::vector<std::uint8_t>(s.begin(), s.end()));
        if (frame < 0 || static_cast<std::size_t>(frame) >= r.decisions.size()) throw UsageError("no such frame");
        const HitMap h = hit_ratio_map(r.decisions[static_cast<std::size_t>(frame)], r.header.width, r.header.height);
        return py::make_tuple(frame_to_array(Frame({h.mask})), h.ratio());
      },
      py::arg("stream"), py::arg("frame") = 0, "Nearest mask of 4x4 luma blocks and its hit ratio.");
}
