#include "headpose/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "headpose/errors.hpp"

namespace headpose {

using nlohmann::json;

namespace {

constexpr const char* kAnnotationHeader = "# headpose annotations v1";
constexpr const char* kPredictionHeader = "# headpose predictions v1";

Eigen::Matrix3d parse_mat3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3) throw DataError(what + ": expected 3x3 array");
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r) {
        if (!j[r].is_array() || j[r].size() != 3) throw DataError(what + ": expected 3x3 array");
        for (int c = 0; c < 3; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
}

Eigen::Vector3d parse_vec3(const json& j, const std::string& what) {
    Eigen::Vector3d v;
    if (j.is_array() && j.size() == 3) {
        for (int i = 0; i < 3; ++i) {
            v[i] = j[i].is_array() ? j[i].at(0).get<double>() : j[i].get<double>();
        }
        return v;
    }
    throw DataError(what + ": expected length-3 vector");
}

json mat3_to_json(const Eigen::Matrix3d& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
    }
    return rows;
}

}  // namespace

CalibrationLoadResult load_calibration(const std::filesystem::path& path,
                                       const std::optional<std::string>& type_filter) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open calibration file: " + path.string());
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw DataError("malformed calibration JSON in " + path.string() + ": " + e.what());
    }
    if (!root.contains("cameras") || !root["cameras"].is_array()) {
        throw DataError("calibration file missing \"cameras\" array: " + path.string());
    }

    CalibrationLoadResult out;
    for (const auto& cam : root["cameras"]) {
        std::string name;
        try {
            name = cam.at("name").get<std::string>();
            if (type_filter && cam.value("type", std::string{}) != *type_filter) continue;

            CameraIntrinsics intr;
            intr.K = parse_mat3(cam.at("K"), "K");
            const auto& res = cam.at("resolution");
            intr.width = res.at(0).get<int>();
            intr.height = res.at(1).get<int>();
            if (cam.contains("distCoef")) {
                const auto& d = cam["distCoef"];
                for (std::size_t i = 0; i < intr.distortion.size() && i < d.size(); ++i) {
                    intr.distortion[i] = d[i].get<double>();
                }
            }
            if (intr.K(0, 0) <= 0.0 || intr.K(1, 1) <= 0.0 ||
                std::abs(intr.K.determinant()) < 1e-12) {
                throw DataError("non-invertible K");
            }

            CameraExtrinsics extr;
            extr.R = parse_mat3(cam.at("R"), "R");
            extr.t = parse_vec3(cam.at("t"), "t");
            const double dev = (extr.R.transpose() * extr.R - Eigen::Matrix3d::Identity())
                                   .cwiseAbs()
                                   .maxCoeff();
            if (dev > 1e-4) throw DataError("R not orthonormal within 1e-4");
            if (extr.R.determinant() < 0.0) throw DataError("R is a reflection (det -1)");
            if (dev > 1e-6) {
                Eigen::JacobiSVD<Eigen::Matrix3d> svd(
                    extr.R, Eigen::ComputeFullU | Eigen::ComputeFullV);
                extr.R = svd.matrixU() * svd.matrixV().transpose();
                ++out.reorthonormalized;
            }

            if (out.calibration.cameras.count(name)) throw DataError("duplicate camera id");
            out.calibration.cameras.emplace(name, std::make_pair(intr, extr));
        } catch (const json::exception& e) {
            throw DataError("camera \"" + name + "\" in " + path.string() + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError("camera \"" + name + "\" in " + path.string() + ": " + e.what());
        }
    }
    return out;
}

void write_calibration(const CalibrationSet& calib, const std::filesystem::path& path) {
    json cams = json::array();
    for (const auto& [name, cam] : calib.cameras) {
        const auto& [intr, extr] = cam;
        json c;
        c["name"] = name;
        c["type"] = "hd";
        c["resolution"] = {intr.width, intr.height};
        c["K"] = mat3_to_json(intr.K);
        c["distCoef"] = intr.distortion;
        c["R"] = mat3_to_json(extr.R);
        c["t"] = {{extr.t.x()}, {extr.t.y()}, {extr.t.z()}};
        cams.push_back(std::move(c));
    }
    json root;
    root["cameras"] = std::move(cams);
    std::ofstream os(path);
    if (!os) throw DataError("cannot write calibration file: " + path.string());
    os << root.dump(2) << "\n";
}

namespace {

long frame_id_from_name(const std::filesystem::path& p) {
    const std::string stem = p.stem().string();
    long id = -1;
    for (std::size_t i = 0; i < stem.size();) {
        if (std::isdigit(static_cast<unsigned char>(stem[i]))) {
            std::size_t j = i;
            while (j < stem.size() && std::isdigit(static_cast<unsigned char>(stem[j]))) ++j;
            id = std::stol(stem.substr(i, j - i));  // keep the last run of digits
            i = j;
        } else {
            ++i;
        }
    }
    return id;
}

FaceFrame load_one_face_frame(const std::filesystem::path& file, int expected_landmarks,
                              std::vector<SkipReport>& skips) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open face frame file: " + file.string());
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw DataError("malformed face frame JSON in " + file.string() + ": " + e.what());
    }

    FaceFrame frame;
    frame.frame_id = frame_id_from_name(file);
    if (frame.frame_id < 0) {
        throw DataError("no frame id digits in file name: " + file.string());
    }
    for (const auto& person : root.value("people", json::array())) {
        const int subject_id = person.value("id", -1);
        const json lm = person.contains("face70") ? person["face70"].value("landmarks", json())
                                                  : json();
        if (!lm.is_array() || lm.size() % 3 != 0) {
            skips.push_back({frame.frame_id, subject_id, "missing or malformed landmarks"});
            continue;
        }
        const int n = static_cast<int>(lm.size() / 3);
        if (n != expected_landmarks) {
            skips.push_back({frame.frame_id, subject_id,
                             "landmark count " + std::to_string(n) + " != expected " +
                                 std::to_string(expected_landmarks)});
            continue;
        }
        PointSet3 pts(3, n);
        for (int i = 0; i < n; ++i) {
            pts(0, i) = lm[3 * i].get<double>();
            pts(1, i) = lm[3 * i + 1].get<double>();
            pts(2, i) = lm[3 * i + 2].get<double>();
        }
        frame.subjects.emplace_back(subject_id, std::move(pts));
    }
    return frame;
}

}  // namespace

FaceFrameLoadResult load_face_frames(const std::filesystem::path& path, int expected_landmarks) {
    FaceFrameLoadResult out;
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(path)) {
        for (const auto& e : std::filesystem::directory_iterator(path)) {
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
        }
    } else {
        files.push_back(path);
    }
    for (const auto& f : files) {
        out.frames.push_back(load_one_face_frame(f, expected_landmarks, out.skips));
    }
    std::sort(out.frames.begin(), out.frames.end(),
              [](const FaceFrame& a, const FaceFrame& b) { return a.frame_id < b.frame_id; });
    return out;
}

namespace {

json pose_to_json(const EulerPose& p) {
    return json{{"pitch", p.pitch}, {"yaw", p.yaw}, {"roll", p.roll}};
}

EulerPose pose_from_json(const json& j) {
    return EulerPose{j.at("pitch").get<double>(), j.at("yaw").get<double>(),
                     j.at("roll").get<double>()};
}

template <typename Record, typename ToJson>
void write_jsonl(const std::vector<Record>& records, const std::filesystem::path& path,
                 const char* header, ToJson to_json) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot write: " + path.string());
    os << header << "\n";
    for (const auto& r : records) {
        os << to_json(r).dump() << "\n";
    }
    if (!os) throw DataError("write failed: " + path.string());
}

template <typename Record, typename FromJson>
void load_jsonl(const std::filesystem::path& path, std::vector<Record>& records,
                std::vector<std::pair<int, std::string>>& bad_lines, FromJson from_json) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open: " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        try {
            records.push_back(from_json(json::parse(line)));
        } catch (const std::exception& e) {
            bad_lines.emplace_back(lineno, e.what());
        }
    }
}

}  // namespace

void write_annotations(const std::vector<AnnotationRecord>& records,
                       const std::filesystem::path& path) {
    write_jsonl(records, path, kAnnotationHeader, [](const AnnotationRecord& r) {
        json j = pose_to_json(r.pose);
        j["frame"] = r.frame_id;
        j["subject"] = r.subject_id;
        j["camera"] = r.camera_id;
        j["box"] = {r.crop_box.x_min, r.crop_box.y_min, r.crop_box.x_max, r.crop_box.y_max};
        j["fit_rms"] = r.fit_rms;
        j["gimbal"] = r.gimbal_warning;
        return j;
    });
}

void write_predictions(const std::vector<PredictionRecord>& records,
                       const std::filesystem::path& path) {
    write_jsonl(records, path, kPredictionHeader, [](const PredictionRecord& r) {
        json j = pose_to_json(r.pose);
        j["frame"] = r.frame_id;
        j["subject"] = r.subject_id;
        j["camera"] = r.camera_id;
        return j;
    });
}

AnnotationLoadResult load_annotations(const std::filesystem::path& path) {
    AnnotationLoadResult out;
    load_jsonl(path, out.records, out.bad_lines, [](const json& j) {
        AnnotationRecord r;
        r.frame_id = j.at("frame").get<long>();
        r.subject_id = j.at("subject").get<int>();
        r.camera_id = j.at("camera").get<std::string>();
        r.pose = pose_from_json(j);
        const auto& b = j.at("box");
        r.crop_box = CropBox{b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(),
                             b.at(3).get<double>()};
        r.fit_rms = j.at("fit_rms").get<double>();
        r.gimbal_warning = j.value("gimbal", false);
        return r;
    });
    return out;
}

PredictionLoadResult load_predictions(const std::filesystem::path& path) {
    PredictionLoadResult out;
    load_jsonl(path, out.records, out.bad_lines, [](const json& j) {
        PredictionRecord r;
        r.frame_id = j.at("frame").get<long>();
        r.subject_id = j.at("subject").get<int>();
        r.camera_id = j.at("camera").get<std::string>();
        r.pose = pose_from_json(j);
        return r;
    });
    return out;
}

}  // namespace headpose
