#ifndef ARRCOVER_TESTS_SUPPORT_HPP
#define ARRCOVER_TESTS_SUPPORT_HPP

#include <fstream>
#include <memory>
#include <string>

#include "arrcover/arrangement.hpp"
#include "arrcover/oriented_system.hpp"

namespace testing {

inline std::string corpus_path(const std::string& name)
{
    return std::string(ARRCOVER_CORPUS_DIR) + "/" + name + ".arr";
}

struct Loaded
{
    std::shared_ptr<const arrcover::FacePoset> faces;
    std::shared_ptr<const arrcover::OrientedSystem> gamma;

    int face(const std::string& signs) const { return faces->index_of(signs); }
    int chamber(const std::string& signs) const { return gamma->vertex_of(signs); }
};

inline Loaded from_text(const std::string& text)
{
    auto faces = std::make_shared<const arrcover::FacePoset>(arrcover::enumerate_faces(arrcover::parse_arrangement(text)));
    return {faces, std::make_shared<const arrcover::OrientedSystem>(arrcover::gamma_of(faces))};
}

inline Loaded load(const std::string& name)
{
    std::ifstream in(corpus_path(name));
    auto faces = std::make_shared<const arrcover::FacePoset>(arrcover::enumerate_faces(arrcover::parse_arrangement(in)));
    return {faces, std::make_shared<const arrcover::OrientedSystem>(arrcover::gamma_of(faces))};
}

inline const char* const corpus[] = {"empty", "point", "twopoints", "twolines", "threelines", "generic", "planes"};

}  // namespace testing

#endif
