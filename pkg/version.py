#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/pnhom/blob/master/LICENSE

__version__ = '0.1.0.dev0'
__author__ = 'The pnhom developers'
__contact__ = 'pnhom@googlegroups.com'


def get_license_text(filepath):
    "open the LICENSE file and read the contents"
    try:
        with open(filepath) as fh:
            return fh.read()
    except OSError:
        return ''


def get_readme_as_rst(filepath):
    "open the README file and read the markdown as rst"
    try:
        fh = open(filepath)
    except OSError:
        return ''
    with fh:
        name, null = fh.readline().rstrip(), fh.readline()
        tag, null = fh.readline(), fh.readline()
        tag = "%s: %s" % (name, tag)
        split = '-'*(len(tag)-1)+'\n'
        README = ''.join((null,split,tag,split,'\n'))
        code = False
        for line in fh:
            if line.startswith('```'): # fenced block -> literal block
                README += '' if code else '::\n\n'
                code = not code
            elif code:
                README += '    ' + line
            elif line.startswith('* '):
                README += line.replace('* ','    - ',1)
            elif line.startswith('-'):
                README += line.replace('-','=') + '\n'
            else:
                README += line.replace('`', '``')
    return README


def write_info_file(dirpath, modulename, **info):
    """write the given info to 'modulename/__info__.py'

    info expects:
        doc: the module's long_description
        version: the module's version string
        author: the module's author string
        license: the module's license contents
    """
    import os
    infofile = os.path.join(dirpath, '%s/__info__.py' % modulename)
    header = '''#!/usr/bin/env python
#
# Copyright (c) 2025 The pnhom developers.
# License: 3-clause BSD.  The full license text is available at:
#  - https://github.com/pnhom/%s/blob/master/LICENSE
''' % modulename
    with open(infofile, 'w') as fh:
        fh.write(header)
        for key in ('doc', 'version', 'author', 'license'):
            value = info.get(key)
            if value is None:
                continue
            if key in ('doc', 'license'):
                fh.write("__%s__ = '''\n%s'''\n\n" % (key, value.replace("'''", '"""')))
            else:
                fh.write("__%s__ = %r\n" % (key, value))
    return
