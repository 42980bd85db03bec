#include <forge/core/canonical_json.hpp>
#include <forge/core/error.hpp>
#include <forge/layers/gltf.hpp>

#include <cstring>
#include <limits>

namespace forge {

namespace {

constexpr std::uint32_t kChunkJson = 0x4E4F534A;
constexpr std::uint32_t kChunkBin = 0x004E4942;
constexpr int kFloat = 5126;

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t off)
{
    return b[off] | b[off + 1] << 8 | b[off + 2] << 16 | std::uint32_t(b[off + 3]) << 24;
}

void put32(Bytes& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <class T>
void put(Bytes& out, T v)
{
    std::uint8_t raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    out.insert(out.end(), raw, raw + sizeof(T));
}

[[noreturn]] void malformed(const std::string& what)
{
    throw Error(ErrorCode::MalformedPayload, "glTF: " + what);
}

}  // namespace

MeshBounds read_glb_bounds(std::span<const std::uint8_t> glb)
{
    if (glb.size() < 20 || std::memcmp(glb.data(), "glTF", 4) != 0)
        malformed("missing binary container header");
    if (le32(glb, 4) != 2)
        malformed("unsupported version");
    const std::size_t total = std::min<std::size_t>(le32(glb, 8), glb.size());

    Json doc;
    std::span<const std::uint8_t> bin;
    for (std::size_t pos = 12; pos + 8 <= total;) {
        const std::size_t len = le32(glb, pos);
        const std::uint32_t type = le32(glb, pos + 4);
        if (len > total - pos - 8)
            malformed("chunk overruns container");
        const auto body = glb.subspan(pos + 8, len);
        if (type == kChunkJson) {
            try {
                doc = Json::parse(body.begin(), body.end());
            } catch (const Json::exception& e) {
                malformed(e.what());
            }
        } else if (type == kChunkBin && bin.empty()) {
            bin = body;
        }
        pos += 8 + len;
    }
    if (!doc.is_object())
        malformed("no JSON chunk");

    Vector3<double> lo = Vector3<double>::Constant(std::numeric_limits<double>::infinity());
    Vector3<double> hi = -lo;
    bool any = false;
    try {
        const Json& accessors = doc.at("accessors");
        for (const auto& mesh : doc.value("meshes", Json::array())) {
            for (const auto& prim : mesh.at("primitives")) {
                const auto attrs = prim.at("attributes");
                if (!attrs.contains("POSITION"))
                    continue;
                const Json& acc = accessors.at(attrs["POSITION"].get<std::size_t>());
                const auto count = acc.at("count").get<std::size_t>();
                if (count == 0)
                    continue;
                if (acc.contains("min") && acc.contains("max")) {
                    for (int k = 0; k < 3; ++k) {
                        lo[k] = std::min(lo[k], acc["min"].at(k).get<double>());
                        hi[k] = std::max(hi[k], acc["max"].at(k).get<double>());
                    }
                    any = true;
                    continue;
                }
                if (acc.at("componentType").get<int>() != kFloat || acc.at("type").get<std::string>() != "VEC3")
                    malformed("POSITION accessor is not float VEC3");
                const Json& view = doc.at("bufferViews").at(acc.at("bufferView").get<std::size_t>());
                if (view.value("buffer", 0) != 0)
                    malformed("POSITION data outside the embedded buffer");
                const std::size_t stride = view.value("byteStride", std::size_t(12));
                const std::size_t base = view.value("byteOffset", std::size_t(0)) + acc.value("byteOffset", std::size_t(0));
                if (base + (count - 1) * stride + 12 > bin.size())
                    malformed("POSITION data overruns the binary chunk");
                for (std::size_t i = 0; i < count; ++i) {
                    float xyz[3];
                    std::memcpy(xyz, bin.data() + base + i * stride, 12);
                    for (int k = 0; k < 3; ++k) {
                        lo[k] = std::min(lo[k], double(xyz[k]));
                        hi[k] = std::max(hi[k], double(xyz[k]));
                    }
                }
                any = true;
            }
        }
    } catch (const Json::exception& e) {
        malformed(e.what());
    }
    if (!any)
        throw Error(ErrorCode::DegenerateMesh, "mesh has no vertex positions");
    return {lo, hi};
}

Bytes make_box_glb(const Vector3<double>& size, const std::array<std::uint8_t, 3>& rgb)
{
    const float hx = float(size.x() / 2), hz = float(size.z() / 2), h = float(size.y());
    const float verts[8][3] = {{-hx, 0, -hz}, {hx, 0, -hz}, {hx, 0, hz}, {-hx, 0, hz},
                               {-hx, h, -hz}, {hx, h, -hz}, {hx, h, hz}, {-hx, h, hz}};
    const std::uint16_t idx[36] = {0, 1, 2, 0, 2, 3, 4, 6, 5, 4, 7, 6, 0, 4, 5, 0, 5, 1,
                                   1, 5, 6, 1, 6, 2, 2, 6, 7, 2, 7, 3, 3, 7, 4, 3, 4, 0};
    Bytes bin;
    for (const auto& v : verts)
        for (float c : v)
            put(bin, c);
    for (auto i : idx)
        put(bin, i);
    while (bin.size() % 4)
        bin.push_back(0);

    const Json doc = {
        {"asset", {{"version", "2.0"}, {"generator", "forge"}}},
        {"scene", 0},
        {"scenes", Json::array({{{"nodes", Json::array({0})}}})},
        {"nodes", Json::array({{{"mesh", 0}}})},
        {"materials", Json::array({{{"pbrMetallicRoughness",
                                     {{"baseColorFactor", Json::array({rgb[0] / 255.0, rgb[1] / 255.0, rgb[2] / 255.0, 1.0})},
                                      {"metallicFactor", 0.0}}}}})},
        {"meshes", Json::array({{{"primitives", Json::array({{{"attributes", {{"POSITION", 0}}},
                                                               {"indices", 1},
                                                               {"material", 0}}})}}})},
        {"accessors", Json::array({{{"bufferView", 0},
                                    {"componentType", kFloat},
                                    {"count", 8},
                                    {"type", "VEC3"},
                                    {"min", Json::array({-hx, 0.0, -hz})},
                                    {"max", Json::array({hx, h, hz})}},
                                   {{"bufferView", 1}, {"componentType", 5123}, {"count", 36}, {"type", "SCALAR"}}})},
        {"bufferViews", Json::array({{{"buffer", 0}, {"byteOffset", 0}, {"byteLength", 96}, {"target", 34962}},
                                     {{"buffer", 0}, {"byteOffset", 96}, {"byteLength", 72}, {"target", 34963}}})},
        {"buffers", Json::array({{{"byteLength", bin.size()}}})},
    };
    std::string json = doc.dump();
    while (json.size() % 4)
        json.push_back(' ');

    Bytes out;
    out.insert(out.end(), {'g', 'l', 'T', 'F'});
    put32(out, 2);
    put32(out, static_cast<std::uint32_t>(12 + 8 + json.size() + 8 + bin.size()));
    put32(out, static_cast<std::uint32_t>(json.size()));
    put32(out, kChunkJson);
    out.insert(out.end(), json.begin(), json.end());
    put32(out, static_cast<std::uint32_t>(bin.size()));
    put32(out, kChunkBin);
    out.insert(out.end(), bin.begin(), bin.end());
    return out;
}

MeshAsset MeshAsset::from_glb(Bytes glb)
{
    MeshAsset asset;
    asset.bounds = read_glb_bounds(glb);
    asset.glb = std::make_shared<const Bytes>(std::move(glb));
    return asset;
}

}  // namespace forge
