#pragma once

#include <stdexcept>
#include <string>

namespace hullglyph {

// Every failure the library reports on bad input derives from Error. The CLI
// maps these to exit code 2.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define HULLGLYPH_DEFINE_ERROR(Name)                                           \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

HULLGLYPH_DEFINE_ERROR(EmptyPointSet);
HULLGLYPH_DEFINE_ERROR(DegenerateHull);
HULLGLYPH_DEFINE_ERROR(EmptyGlyph);
HULLGLYPH_DEFINE_ERROR(ImageFormatError);
HULLGLYPH_DEFINE_ERROR(ShapeError);
HULLGLYPH_DEFINE_ERROR(EmptyDataset);
HULLGLYPH_DEFINE_ERROR(ModelFormatError);
HULLGLYPH_DEFINE_ERROR(FeatureFileError);
HULLGLYPH_DEFINE_ERROR(ManifestError);
HULLGLYPH_DEFINE_ERROR(SplitError);

#undef HULLGLYPH_DEFINE_ERROR

}  // namespace hullglyph
